#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "fockoptics/errors.hpp"

namespace fockoptics {

/// Largest supported per-mode cutoff; 170! is the last factorial that fits
/// in a double.
inline constexpr int kMaxCutoff = 170;

/// Default probability mass allowed above the cutoff for coherent inputs.
inline constexpr double kDefaultTruncationTail = 1e-12;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Maximum photon number kept per mode (inclusive).
class FockCutoff {
public:
    explicit FockCutoff(int n_max) : n_max_(n_max) {
        if (n_max < 1 || n_max > kMaxCutoff) {
            throw std::invalid_argument("cutoff n_max must lie in [1, " +
                                        std::to_string(kMaxCutoff) + "], got " +
                                        std::to_string(n_max));
        }
    }

    int n_max() const noexcept { return n_max_; }
    Eigen::Index dim() const noexcept { return n_max_ + 1; }
    Eigen::Index two_mode_dim() const noexcept { return dim() * dim(); }
    bool contains(int n) const noexcept { return n >= 0 && n <= n_max_; }

    friend bool operator==(const FockCutoff&, const FockCutoff&) = default;

private:
    int n_max_;
};

enum class Mode { A, B };

constexpr Mode other(Mode mode) noexcept { return mode == Mode::A ? Mode::B : Mode::A; }
constexpr char mode_name(Mode mode) noexcept { return mode == Mode::A ? 'a' : 'b'; }

/// Pure state of two bosonic modes on the dense grid
/// {|n>_a |m>_b : 0 <= n, m <= n_max}. Row index is n, column index is m.
template <typename Real = double>
class BasicTwoModeState {
public:
    using RealScalar = Real;
    using Complex = std::complex<Real>;
    using Amplitudes = CMatrix<Real>;

    explicit BasicTwoModeState(FockCutoff cutoff)
        : cutoff_(cutoff), amps_(Amplitudes::Zero(cutoff.dim(), cutoff.dim())) {}

    BasicTwoModeState(FockCutoff cutoff, Amplitudes amps)
        : cutoff_(cutoff), amps_(std::move(amps)) {
        if (amps_.rows() != cutoff_.dim() || amps_.cols() != cutoff_.dim()) {
            throw CutoffMismatch("amplitude tensor shape does not match cutoff");
        }
    }

    const FockCutoff& cutoff() const noexcept { return cutoff_; }
    const Amplitudes& amplitudes() const noexcept { return amps_; }
    Complex operator()(Eigen::Index n, Eigen::Index m) const { return amps_(n, m); }

    Real squared_norm() const { return amps_.squaredNorm(); }
    Real norm() const { return amps_.norm(); }

    /// Amplitudes as a column vector with index n * (n_max + 1) + m.
    CVector<Real> flattened() const {
        const Eigen::Index d = cutoff_.dim();
        CVector<Real> v(d * d);
        for (Eigen::Index n = 0; n < d; ++n) {
            for (Eigen::Index m = 0; m < d; ++m) v(n * d + m) = amps_(n, m);
        }
        return v;
    }

    static BasicTwoModeState from_flattened(FockCutoff cutoff, const CVector<Real>& v) {
        const Eigen::Index d = cutoff.dim();
        if (v.size() != d * d) throw CutoffMismatch("flattened vector length does not match cutoff");
        Amplitudes amps(d, d);
        for (Eigen::Index n = 0; n < d; ++n) {
            for (Eigen::Index m = 0; m < d; ++m) amps(n, m) = v(n * d + m);
        }
        return BasicTwoModeState(cutoff, std::move(amps));
    }

private:
    FockCutoff cutoff_;
    Amplitudes amps_;
};

using TwoModeState = BasicTwoModeState<double>;

/// Coherent amplitude |alpha> with its allowed truncation tail.
template <typename Real = double>
struct CoherentSpec {
    std::complex<Real> alpha{};
    Real truncation_tail = Real(kDefaultTruncationTail);
};

/// eta * (|alpha> + sign * |beta>); eta is filled in by cat_state.
template <typename Real = double>
struct CatSpec {
    std::complex<Real> alpha{};
    std::complex<Real> beta{};
    int sign = +1;
    Real truncation_tail = Real(kDefaultTruncationTail);
    Real eta = 0;
};

template <typename Real>
struct CatState {
    BasicTwoModeState<Real> state;
    CatSpec<Real> spec;
};

template <typename Real = double>
BasicTwoModeState<Real> fock_state(int n, int m, FockCutoff cutoff) {
    if (!cutoff.contains(n) || !cutoff.contains(m)) {
        throw CutoffExceeded("Fock state |" + std::to_string(n) + "," + std::to_string(m) +
                             "> does not fit under n_max = " + std::to_string(cutoff.n_max()));
    }
    typename BasicTwoModeState<Real>::Amplitudes amps =
        BasicTwoModeState<Real>::Amplitudes::Zero(cutoff.dim(), cutoff.dim());
    amps(n, m) = Real(1);
    return BasicTwoModeState<Real>(cutoff, std::move(amps));
}

template <typename Real = double>
BasicTwoModeState<Real> vacuum(FockCutoff cutoff) {
    return fock_state<Real>(0, 0, cutoff);
}

/// |a> (x) |b> from single-mode amplitude vectors of length n_max + 1.
template <typename Real>
BasicTwoModeState<Real> product_state(const CVector<Real>& mode_a, const CVector<Real>& mode_b,
                                      FockCutoff cutoff) {
    if (mode_a.size() != cutoff.dim() || mode_b.size() != cutoff.dim()) {
        throw CutoffMismatch("single-mode vector length does not match cutoff");
    }
    return BasicTwoModeState<Real>(cutoff, mode_a * mode_b.transpose());
}

/// Places a single-mode vector on `mode`, vacuum on the other mode.
template <typename Real>
BasicTwoModeState<Real> embed(const CVector<Real>& single, Mode mode, FockCutoff cutoff) {
    CVector<Real> vac = CVector<Real>::Zero(cutoff.dim());
    vac(0) = Real(1);
    return mode == Mode::A ? product_state<Real>(single, vac, cutoff)
                           : product_state<Real>(vac, single, cutoff);
}

/// Poisson probability mass strictly above n_max for the given mean.
template <typename Real>
Real poisson_tail_above(Real mean, int n_max) {
    if (mean <= Real(0)) return Real(0);
    const Real log_mean = std::log(mean);
    Real tail = 0;
    for (int n = n_max + 1;; ++n) {
        const Real term = std::exp(-mean + Real(n) * log_mean - std::lgamma(Real(n + 1)));
        tail += term;
        if (Real(n) > mean && term <= tail * std::numeric_limits<Real>::epsilon()) break;
        if (n > n_max + 100000) break;
    }
    return tail;
}

/// Smallest n_max whose Poisson tail for |alpha|^2 is within `tail`.
/// Returns kMaxCutoff + 1 when no supported cutoff suffices.
template <typename Real>
int required_cutoff(std::complex<Real> alpha, Real tail = Real(kDefaultTruncationTail)) {
    const Real mean = std::norm(alpha);
    for (int n = 1; n <= kMaxCutoff; ++n) {
        if (poisson_tail_above(mean, n) <= tail) return n;
    }
    return kMaxCutoff + 1;
}

/// Truncated coherent amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!),
/// not renormalized.
template <typename Real>
CVector<Real> coherent_amplitudes(std::complex<Real> alpha, FockCutoff cutoff) {
    CVector<Real> c(cutoff.dim());
    c(0) = std::exp(-std::norm(alpha) / Real(2));
    for (Eigen::Index n = 1; n < cutoff.dim(); ++n) {
        c(n) = c(n - 1) * alpha / std::sqrt(Real(n));
    }
    return c;
}

namespace detail {

template <typename Real>
void check_tail(std::complex<Real> alpha, Real tail, FockCutoff cutoff) {
    if (!(tail > Real(0) && tail < Real(1))) {
        throw std::invalid_argument("truncation_tail must lie in (0, 1)");
    }
    if (poisson_tail_above(std::norm(alpha), cutoff.n_max()) > tail) {
        throw CutoffTooSmall("coherent amplitude |alpha|^2 = " +
                                 std::to_string(double(std::norm(alpha))) +
                                 " leaks more than the tail budget above n_max = " +
                                 std::to_string(cutoff.n_max()),
                             required_cutoff(alpha, tail));
    }
}

}  // namespace detail

/// Single-mode truncated coherent vector, renormalized after truncation.
template <typename Real>
CVector<Real> coherent_vector(const CoherentSpec<Real>& spec, FockCutoff cutoff) {
    detail::check_tail(spec.alpha, spec.truncation_tail, cutoff);
    CVector<Real> c = coherent_amplitudes(spec.alpha, cutoff);
    c /= c.norm();
    return c;
}

template <typename Real>
BasicTwoModeState<Real> coherent_state(const CoherentSpec<Real>& spec, Mode mode,
                                       FockCutoff cutoff) {
    return embed<Real>(coherent_vector(spec, cutoff), mode, cutoff);
}

template <typename Real>
CatState<Real> cat_state(const CatSpec<Real>& spec, Mode mode, FockCutoff cutoff) {
    if (spec.sign != 1 && spec.sign != -1) throw std::invalid_argument("cat sign must be +1 or -1");
    detail::check_tail(spec.alpha, spec.truncation_tail, cutoff);
    detail::check_tail(spec.beta, spec.truncation_tail, cutoff);
    CVector<Real> sum = coherent_amplitudes(spec.alpha, cutoff) +
                        Real(spec.sign) * coherent_amplitudes(spec.beta, cutoff);
    const Real norm = sum.norm();
    if (!(norm > Real(0))) throw ZeroState("cat superposition vanishes (alpha == beta, sign -)");
    CatSpec<Real> filled = spec;
    filled.eta = Real(1) / norm;
    return {embed<Real>(CVector<Real>(sum * filled.eta), mode, cutoff), filled};
}

template <typename Real>
std::complex<Real> inner_product(const BasicTwoModeState<Real>& x, const BasicTwoModeState<Real>& y) {
    if (!(x.cutoff() == y.cutoff())) throw CutoffMismatch("inner product across different cutoffs");
    return x.amplitudes().conjugate().cwiseProduct(y.amplitudes()).sum();
}

/// Scales by the positive real 1/||x||; the global phase is untouched.
template <typename Real>
BasicTwoModeState<Real> normalize(const BasicTwoModeState<Real>& x) {
    const Real norm = x.norm();
    if (!(norm > Real(0))) throw ZeroState("cannot normalize the zero state");
    return BasicTwoModeState<Real>(x.cutoff(), x.amplitudes() / norm);
}

/// Largest |x[n][m] - y[n][m]|.
template <typename Real>
Real max_amplitude_deviation(const BasicTwoModeState<Real>& x, const BasicTwoModeState<Real>& y) {
    if (!(x.cutoff() == y.cutoff())) throw CutoffMismatch("comparison across different cutoffs");
    return (x.amplitudes() - y.amplitudes()).cwiseAbs().maxCoeff();
}

}  // namespace fockoptics
