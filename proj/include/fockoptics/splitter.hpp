#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fockoptics/bosonic_ops.hpp"
#include "fockoptics/fock.hpp"

namespace fockoptics {

/// Ideal lossless splitter with mixing angle theta: T = cos(theta), R = sin(theta).
template <typename Real = double>
class SplitterParams {
public:
    explicit SplitterParams(Real theta) : theta_(theta), t_(std::cos(theta)), r_(std::sin(theta)) {}

    Real theta() const noexcept { return theta_; }
    Real t() const noexcept { return t_; }
    Real r() const noexcept { return r_; }

private:
    Real theta_;
    Real t_;
    Real r_;
};

template <typename Real>
using ScatteringMatrix = Eigen::Matrix<std::complex<Real>, 2, 2>;

/// (a_out, b_out) = [[T, iR], [iR, T]] (a_in, b_in).
template <typename Real>
ScatteringMatrix<Real> scattering_matrix(const SplitterParams<Real>& p) {
    const std::complex<Real> ir(0, p.r());
    ScatteringMatrix<Real> m;
    m << p.t(), ir, ir, p.t();
    return m;
}

/// (a_in, b_in) = [[T, -iR], [-iR, T]] (a_out, b_out).
template <typename Real>
ScatteringMatrix<Real> inverse_scattering_matrix(const SplitterParams<Real>& p) {
    const std::complex<Real> ir(0, -p.r());
    ScatteringMatrix<Real> m;
    m << p.t(), ir, ir, p.t();
    return m;
}

/// max |forward * inverse - 1|.
template <typename Real>
Real scattering_roundtrip(const SplitterParams<Real>& p) {
    const ScatteringMatrix<Real> prod = scattering_matrix(p) * inverse_scattering_matrix(p);
    return (prod - ScatteringMatrix<Real>::Identity()).cwiseAbs().maxCoeff();
}

/// Sign s in S = exp(i s theta (a b^dagger + a^dagger b)).
enum class ExponentSign : int { Positive = 1, Negative = -1 };

constexpr ExponentSign flipped(ExponentSign s) noexcept {
    return s == ExponentSign::Positive ? ExponentSign::Negative : ExponentSign::Positive;
}

namespace detail {

template <typename Real>
struct SqrtFactorials {
    std::vector<Real> values;
    SqrtFactorials() : values(kMaxCutoff + 1) {
        values[0] = Real(1);
        for (int n = 1; n <= kMaxCutoff; ++n) values[n] = values[n - 1] * std::sqrt(Real(n));
    }
};

template <typename Real>
const std::vector<Real>& sqrt_factorials() {
    static const SqrtFactorials<Real> table;
    return table.values;
}

/// Pascal triangle rows 0..n_max.
template <typename Real>
std::vector<std::vector<Real>> binomials(int n_max) {
    std::vector<std::vector<Real>> c(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        c[n].assign(n + 1, Real(1));
        for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
}

/// Basis states of fixed total photon number N that fit on the grid.
struct NumberBlock {
    int total;
    int n_lo;  // basis index i <-> |n_lo + i, total - n_lo - i>
    int size;
};

inline std::vector<NumberBlock> number_blocks(FockCutoff cutoff) {
    std::vector<NumberBlock> blocks;
    const int n_max = cutoff.n_max();
    for (int total = 0; total <= 2 * n_max; ++total) {
        const int lo = std::max(0, total - n_max);
        const int hi = std::min(total, n_max);
        blocks.push_back({total, lo, hi - lo + 1});
    }
    return blocks;
}

/// exp(i s theta G) restricted to one block; G is real tridiagonal there.
template <typename Real>
CMatrix<Real> block_unitary(const NumberBlock& block, Real theta, ExponentSign sign) {
    using RMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    RMatrix g = RMatrix::Zero(block.size, block.size);
    for (int i = 0; i + 1 < block.size; ++i) {
        const int n = block.n_lo + i;
        const int m = block.total - n;
        // <n+1, m-1| a^dagger b |n, m>
        g(i + 1, i) = g(i, i + 1) = std::sqrt(Real(n + 1)) * std::sqrt(Real(m));
    }
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(g);
    const Real angle = Real(static_cast<int>(sign)) * theta;
    CVector<Real> phases(block.size);
    for (int i = 0; i < block.size; ++i) phases(i) = std::polar(Real(1), angle * eig.eigenvalues()(i));
    const CMatrix<Real> v = eig.eigenvectors().template cast<std::complex<Real>>();
    return v * phases.asDiagonal() * v.transpose();
}

template <typename Real>
BasicTwoModeState<Real> apply_bs_numeric_with(const BasicTwoModeState<Real>& state,
                                              const SplitterParams<Real>& params, ExponentSign sign) {
    const FockCutoff cutoff = state.cutoff();
    const auto& in = state.amplitudes();
    typename BasicTwoModeState<Real>::Amplitudes out(cutoff.dim(), cutoff.dim());
    out.setZero();
    for (const NumberBlock& block : number_blocks(cutoff)) {
        CVector<Real> v(block.size);
        for (int i = 0; i < block.size; ++i) v(i) = in(block.n_lo + i, block.total - block.n_lo - i);
        if (v.isZero(Real(0))) continue;
        const CVector<Real> w = block_unitary(block, params.theta(), sign) * v;
        for (int i = 0; i < block.size; ++i) out(block.n_lo + i, block.total - block.n_lo - i) = w(i);
    }
    return BasicTwoModeState<Real>(cutoff, std::move(out));
}

}  // namespace detail

/// Exponent sign that reproduces S a^dagger S^dagger = T a^dagger + iR b^dagger,
/// fixed once by acting on |1,0> and comparing with T|1,0> + iR|0,1>.
template <typename Real = double>
ExponentSign calibrated_exponent_sign() {
    static const ExponentSign sign = [] {
        const FockCutoff cutoff(1);
        const SplitterParams<Real> probe(Real(0.3));
        const auto input = fock_state<Real>(1, 0, cutoff);
        for (ExponentSign s : {ExponentSign::Positive, ExponentSign::Negative}) {
            const auto out = detail::apply_bs_numeric_with(input, probe, s);
            const Real dev = std::max(std::abs(out(1, 0) - std::complex<Real>(probe.t(), 0)),
                                      std::abs(out(0, 1) - std::complex<Real>(0, probe.r())));
            if (dev < Real(1e-12)) return s;
        }
        throw std::logic_error("no exponent sign reproduces the single-photon splitter action");
    }();
    return sign;
}

/// Beam splitter applied per basis component through the double binomial
/// expansion of (T a^dagger + iR b^dagger)^n (T b^dagger + iR a^dagger)^m |0,0>.
///
/// Components with n + m <= n_max are mapped exactly. Components on the
/// incomplete blocks n + m > n_max lose whatever lands above the cutoff; the
/// expansion cannot represent it on the grid.
template <typename Real>
BasicTwoModeState<Real> apply_bs_analytic(const BasicTwoModeState<Real>& state,
                                          const SplitterParams<Real>& params) {
    const FockCutoff cutoff = state.cutoff();
    const int n_max = cutoff.n_max();
    const auto& sf = detail::sqrt_factorials<Real>();
    const auto binom = detail::binomials<Real>(n_max);

    std::vector<Real> t_pow(2 * n_max + 1);
    std::vector<std::complex<Real>> ir_pow(2 * n_max + 1);
    t_pow[0] = Real(1);
    ir_pow[0] = Real(1);
    const std::complex<Real> ir(0, params.r());
    for (int e = 1; e <= 2 * n_max; ++e) {
        t_pow[e] = t_pow[e - 1] * params.t();
        ir_pow[e] = ir_pow[e - 1] * ir;
    }

    const auto& in = state.amplitudes();
    typename BasicTwoModeState<Real>::Amplitudes out(cutoff.dim(), cutoff.dim());
    out.setZero();
    for (int n = 0; n <= n_max; ++n) {
        for (int m = 0; m <= n_max; ++m) {
            const std::complex<Real> c = in(n, m);
            if (c == std::complex<Real>{}) continue;
            for (int j = 0; j <= n; ++j) {
                for (int k = 0; k <= m; ++k) {
                    const int p = j + m - k;  // photons in a
                    const int q = n - j + k;  // photons in b
                    if (p > n_max || q > n_max) continue;
                    const Real weight = binom[n][j] * binom[m][k] * (sf[p] / sf[n]) * (sf[q] / sf[m]);
                    out(p, q) += c * weight * t_pow[j + k] * ir_pow[n - j + m - k];
                }
            }
        }
    }
    return BasicTwoModeState<Real>(cutoff, std::move(out));
}

/// Beam splitter as exp(i s theta G) applied block by block over total photon
/// number, each block exponentiated through its eigendecomposition.
template <typename Real>
BasicTwoModeState<Real> apply_bs_numeric(const BasicTwoModeState<Real>& state,
                                         const SplitterParams<Real>& params,
                                         ExponentSign sign = calibrated_exponent_sign<Real>()) {
    return detail::apply_bs_numeric_with(state, params, sign);
}

/// Full two-mode matrix of the splitter unitary.
template <typename Real>
TwoModeOperator<Real> bs_unitary(const SplitterParams<Real>& params, FockCutoff cutoff,
                                 ExponentSign sign = calibrated_exponent_sign<Real>()) {
    const Eigen::Index d = cutoff.dim();
    CMatrix<Real> s = CMatrix<Real>::Zero(d * d, d * d);
    for (const auto& block : detail::number_blocks(cutoff)) {
        const CMatrix<Real> u = detail::block_unitary(block, params.theta(), sign);
        for (int i = 0; i < block.size; ++i) {
            for (int j = 0; j < block.size; ++j) {
                const Eigen::Index row = (block.n_lo + i) * d + (block.total - block.n_lo - i);
                const Eigen::Index col = (block.n_lo + j) * d + (block.total - block.n_lo - j);
                s(row, col) = u(i, j);
            }
        }
    }
    return {cutoff, std::move(s), "S"};
}

/// S (creation on `mode`) S^dagger by explicit matrix products.
template <typename Real>
TwoModeOperator<Real> heisenberg_conjugate_creation(const SplitterParams<Real>& params, Mode mode,
                                                    FockCutoff cutoff,
                                                    ExponentSign sign = calibrated_exponent_sign<Real>()) {
    const CMatrix<Real> s = bs_unitary(params, cutoff, sign).matrix;
    const CMatrix<Real> up = on_mode(creation_matrix<Real>(cutoff), mode).matrix;
    return {cutoff, s * up * s.adjoint(), std::string("S a+_") + mode_name(mode) + " S+"};
}

/// T (creation on `mode`) + iR (creation on the other mode).
template <typename Real>
CMatrix<Real> heisenberg_expected(const SplitterParams<Real>& params, Mode mode, FockCutoff cutoff) {
    const ModeOperator<Real> up = creation_matrix<Real>(cutoff);
    return params.t() * on_mode(up, mode).matrix +
           std::complex<Real>(0, params.r()) * on_mode(up, other(mode)).matrix;
}

/// Interior deviation between the conjugated creation operator and its
/// closed form.
template <typename Real>
Real heisenberg_deviation(const SplitterParams<Real>& params, Mode mode, FockCutoff cutoff,
                          ExponentSign sign = calibrated_exponent_sign<Real>()) {
    return interior_deviation(heisenberg_conjugate_creation(params, mode, cutoff, sign),
                              heisenberg_expected(params, mode, cutoff));
}

/// ad_G^k(a^dagger) for k = 0..depth, with G = a^dagger b + a b^dagger.
///
/// Nested commutators of the Fock-basis matrices amplify rounding by roughly
/// 2N + 1 per level on the N-photon block. They are therefore formed in the
/// monomial basis (a^dagger)^n (b^dagger)^m |0,0>, where the ladder operators
/// and G have integer entries and the interior columns stay exact, and then
/// mapped back with the diagonal similarity diag(sqrt(n! m!)). Columns outside
/// the interior grow without bound and carry no meaning.
template <typename Real = double>
std::vector<TwoModeOperator<Real>> nested_commutators(FockCutoff cutoff, int depth) {
    const Eigen::Index d = cutoff.dim();
    CMatrix<Real> up = CMatrix<Real>::Zero(d, d);
    CMatrix<Real> down = CMatrix<Real>::Zero(d, d);
    for (Eigen::Index n = 0; n + 1 < d; ++n) {
        up(n + 1, n) = Real(1);
        down(n, n + 1) = Real(n + 1);
    }
    const CMatrix<Real> id = CMatrix<Real>::Identity(d, d);
    const CMatrix<Real> a_up = kronecker(up, id);
    const CMatrix<Real> g = kronecker(down, id) * kronecker(id, up) + a_up * kronecker(id, down);

    const auto& sf = detail::sqrt_factorials<Real>();
    const auto to_fock = [&](const CMatrix<Real>& mono) {
        CMatrix<Real> out(d * d, d * d);
        for (Eigen::Index r = 0; r < d * d; ++r) {
            for (Eigen::Index c = 0; c < d * d; ++c) {
                out(r, c) = mono(r, c) * ((sf[r / d] * sf[r % d]) / (sf[c / d] * sf[c % d]));
            }
        }
        return out;
    };

    std::vector<TwoModeOperator<Real>> out;
    CMatrix<Real> term = a_up;
    out.push_back({cutoff, to_fock(term), "a+_a"});
    for (int k = 1; k <= depth; ++k) {
        term = commutator<Real>(g, term);
        out.push_back({cutoff, to_fock(term), "ad^" + std::to_string(k)});
    }
    return out;
}

/// Interior deviation between the order-truncated series
/// sum_k (i theta)^k / k! ad_G^k(a^dagger) and the exact conjugation S a^dagger S^dagger.
template <typename Real>
Real bch_series_check(const SplitterParams<Real>& params, int order, FockCutoff cutoff,
                      ExponentSign sign = calibrated_exponent_sign<Real>()) {
    if (order < 1) throw std::invalid_argument("BCH order must be >= 1");
    const auto terms = nested_commutators<Real>(cutoff, order);
    const std::complex<Real> i_chi(0, params.theta());
    std::complex<Real> coef(1, 0);
    CMatrix<Real> series = terms[0].matrix;
    for (int k = 1; k <= order; ++k) {
        coef *= i_chi / Real(k);
        series += coef * terms[k].matrix;
    }
    return interior_deviation(heisenberg_conjugate_creation(params, Mode::A, cutoff, sign), series);
}

}  // namespace fockoptics
