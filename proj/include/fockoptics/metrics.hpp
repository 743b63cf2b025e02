#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fockoptics/fock.hpp"
#include "fockoptics/interferometer.hpp"

namespace fockoptics {

/// Singular values at or below this are treated as zero in the entropy.
inline constexpr double kSchmidtFloor = 1e-12;

template <typename Real = double>
struct PhotonStats {
    Real mean = 0;
    Real variance = 0;
    /// (variance - mean) / mean; 0 when the mode is in vacuum.
    Real mandel_q = 0;
    bool vacuum = false;
};

template <typename Real = double>
struct SchmidtReport {
    std::vector<Real> coefficients;  // descending
    Real entropy_bits = 0;
};

template <typename Real = double>
struct ThermalDistribution {
    std::vector<Real> probabilities;  // p_0 .. p_{n_max}
    Real tail = 0;                    // mass above n_max
};

template <typename Real>
PhotonStats<Real> photon_stats(const BasicTwoModeState<Real>& state, Mode mode) {
    const std::vector<Real> p = detection_distribution(state, mode);
    Real total = 0, first = 0, second = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        total += p[k];
        first += Real(k) * p[k];
        second += Real(k) * Real(k) * p[k];
    }
    PhotonStats<Real> s;
    s.mean = first / total;
    s.variance = std::max(Real(0), second / total - s.mean * s.mean);
    s.vacuum = s.mean == Real(0);
    s.mandel_q = s.vacuum ? Real(0) : (s.variance - s.mean) / s.mean;
    return s;
}

/// Bose-Einstein distribution p_n = m^n / (1 + m)^{n+1} truncated at n_max.
template <typename Real = double>
ThermalDistribution<Real> thermal_distribution(Real mean_n, FockCutoff cutoff) {
    if (!(mean_n > Real(0))) throw std::invalid_argument("thermal mean photon number must be > 0");
    const Real ratio = mean_n / (Real(1) + mean_n);
    ThermalDistribution<Real> d;
    d.probabilities.resize(cutoff.dim());
    for (int n = 0; n <= cutoff.n_max(); ++n) {
        d.probabilities[n] = std::pow(mean_n, Real(n)) / std::pow(Real(1) + mean_n, Real(n + 1));
    }
    d.tail = std::pow(ratio, Real(cutoff.n_max() + 1));
    return d;
}

/// |<x|y>|^2.
template <typename Real>
Real fidelity(const BasicTwoModeState<Real>& x, const BasicTwoModeState<Real>& y) {
    return std::norm(inner_product(x, y));
}

/// <alpha|beta> = exp(-(|alpha|^2 + |beta|^2)/2 + conj(alpha) beta).
template <typename Real>
std::complex<Real> coherent_overlap(std::complex<Real> alpha, std::complex<Real> beta) {
    return std::exp(-(std::norm(alpha) + std::norm(beta)) / Real(2) + std::conj(alpha) * beta);
}

/// Schmidt coefficients of the bipartition a|b are the singular values of
/// the amplitude matrix c[n][m].
template <typename Real>
SchmidtReport<Real> schmidt_decompose(const BasicTwoModeState<Real>& state) {
    Eigen::JacobiSVD<CMatrix<Real>> svd(state.amplitudes());
    SchmidtReport<Real> report;
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > Real(kSchmidtFloor)) report.coefficients.push_back(sv(i));
    }
    std::sort(report.coefficients.begin(), report.coefficients.end(), std::greater<Real>());
    for (Real s : report.coefficients) {
        const Real w = s * s;
        report.entropy_bits -= w * std::log2(w);
    }
    return report;
}

}  // namespace fockoptics
