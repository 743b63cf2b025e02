#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "fockoptics/fock.hpp"

namespace fockoptics {

/// Dense operator on one truncated mode.
template <typename Real = double>
struct ModeOperator {
    FockCutoff cutoff;
    CMatrix<Real> matrix;
    std::string label;
};

/// Dense operator on the two-mode grid; row/column index n * (n_max + 1) + m.
template <typename Real = double>
struct TwoModeOperator {
    FockCutoff cutoff;
    CMatrix<Real> matrix;
    std::string label;
};

/// Tail budget for displacement column 0 above the cutoff.
inline constexpr double kDisplacementTail = 1e-10;

template <typename Real>
CMatrix<Real> kronecker(const CMatrix<Real>& lhs, const CMatrix<Real>& rhs) {
    CMatrix<Real> out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
    for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
        for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
            out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
        }
    }
    return out;
}

template <typename Real>
CMatrix<Real> commutator(const CMatrix<Real>& x, const CMatrix<Real>& y) {
    return x * y - y * x;
}

template <typename Real = double>
ModeOperator<Real> identity_operator(FockCutoff cutoff) {
    return {cutoff, CMatrix<Real>::Identity(cutoff.dim(), cutoff.dim()), "1"};
}

/// a^dagger: entry (n+1, n) = sqrt(n+1).
template <typename Real = double>
ModeOperator<Real> creation_matrix(FockCutoff cutoff) {
    CMatrix<Real> m = CMatrix<Real>::Zero(cutoff.dim(), cutoff.dim());
    for (Eigen::Index n = 0; n < cutoff.n_max(); ++n) m(n + 1, n) = std::sqrt(Real(n + 1));
    return {cutoff, std::move(m), "a+"};
}

template <typename Real = double>
ModeOperator<Real> annihilation_matrix(FockCutoff cutoff) {
    ModeOperator<Real> op = creation_matrix<Real>(cutoff);
    return {cutoff, op.matrix.adjoint(), "a"};
}

template <typename Real = double>
ModeOperator<Real> number_matrix(FockCutoff cutoff) {
    CMatrix<Real> m = CMatrix<Real>::Zero(cutoff.dim(), cutoff.dim());
    for (Eigen::Index n = 0; n < cutoff.dim(); ++n) m(n, n) = Real(n);
    return {cutoff, std::move(m), "n"};
}

/// diag(e^{i n phi}).
template <typename Real = double>
ModeOperator<Real> phase_matrix(Real phi, FockCutoff cutoff) {
    CMatrix<Real> m = CMatrix<Real>::Zero(cutoff.dim(), cutoff.dim());
    for (Eigen::Index n = 0; n < cutoff.dim(); ++n) m(n, n) = std::polar(Real(1), Real(n) * phi);
    return {cutoff, std::move(m), "phase"};
}

/// exp(alpha a^dagger - conj(alpha) a) on the truncated mode.
///
/// The generator is anti-Hermitian, so it is exponentiated through the
/// eigendecomposition of the Hermitian matrix i(alpha a^dagger - conj(alpha) a).
/// The result is exactly unitary on the truncated space; its column 0
/// approaches the coherent amplitudes as the cutoff grows.
template <typename Real>
ModeOperator<Real> displacement_matrix(std::complex<Real> alpha, FockCutoff cutoff) {
    if (poisson_tail_above(std::norm(alpha), cutoff.n_max()) > Real(kDisplacementTail)) {
        throw CutoffTooSmall("displacement leaks above the cutoff",
                             required_cutoff(alpha, Real(kDisplacementTail)));
    }
    const CMatrix<Real> up = creation_matrix<Real>(cutoff).matrix;
    const std::complex<Real> i(0, 1);
    const CMatrix<Real> hermitian = i * (alpha * up - std::conj(alpha) * up.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> eig(hermitian);
    CVector<Real> phases = (-i * eig.eigenvalues().template cast<std::complex<Real>>()).array().exp();
    CMatrix<Real> d = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
    return {cutoff, std::move(d), "D"};
}

/// Lifts a single-mode operator to the two-mode grid.
template <typename Real>
TwoModeOperator<Real> on_mode(const ModeOperator<Real>& op, Mode mode) {
    const CMatrix<Real> id = CMatrix<Real>::Identity(op.cutoff.dim(), op.cutoff.dim());
    CMatrix<Real> m = mode == Mode::A ? kronecker(op.matrix, id) : kronecker(id, op.matrix);
    return {op.cutoff, std::move(m), op.label + "_" + mode_name(mode)};
}

/// Dimensionless beam-splitter generator a b^dagger + a^dagger b.
template <typename Real = double>
TwoModeOperator<Real> bs_hamiltonian(FockCutoff cutoff) {
    const CMatrix<Real> a = on_mode(annihilation_matrix<Real>(cutoff), Mode::A).matrix;
    const CMatrix<Real> b = on_mode(annihilation_matrix<Real>(cutoff), Mode::B).matrix;
    CMatrix<Real> g = a * b.adjoint() + a.adjoint() * b;
    return {cutoff, std::move(g), "G"};
}

template <typename Real>
BasicTwoModeState<Real> apply(const ModeOperator<Real>& op, Mode mode,
                              const BasicTwoModeState<Real>& state) {
    if (!(op.cutoff == state.cutoff())) throw CutoffMismatch("operator and state cutoffs differ");
    if (mode == Mode::A) return BasicTwoModeState<Real>(state.cutoff(), op.matrix * state.amplitudes());
    return BasicTwoModeState<Real>(state.cutoff(), state.amplitudes() * op.matrix.transpose());
}

template <typename Real>
BasicTwoModeState<Real> apply(const TwoModeOperator<Real>& op, const BasicTwoModeState<Real>& state) {
    if (!(op.cutoff == state.cutoff())) throw CutoffMismatch("operator and state cutoffs differ");
    return BasicTwoModeState<Real>::from_flattened(state.cutoff(), op.matrix * state.flattened());
}

/// Largest deviation on the top-left n_max x n_max block, where the truncated
/// ladder algebra is exact.
template <typename Real>
Real interior_deviation(const ModeOperator<Real>& x, const CMatrix<Real>& y) {
    const Eigen::Index k = x.cutoff.n_max();
    return (x.matrix.topLeftCorner(k, k) - y.topLeftCorner(k, k)).cwiseAbs().maxCoeff();
}

/// Largest deviation over columns |n,m> with n + m <= n_max - 1. On those
/// columns a single ladder step followed by any photon-number-conserving
/// operator stays on complete blocks, so truncated products are exact.
template <typename Real>
Real interior_deviation(const TwoModeOperator<Real>& x, const CMatrix<Real>& y) {
    const Eigen::Index d = x.cutoff.dim();
    Real worst = 0;
    for (Eigen::Index n = 0; n < d; ++n) {
        for (Eigen::Index m = 0; n + m <= x.cutoff.n_max() - 1; ++m) {
            const Eigen::Index col = n * d + m;
            worst = std::max(worst, (x.matrix.col(col) - y.col(col)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

/// Largest |entry| coupling basis states of different total photon number.
template <typename Real>
Real max_off_block(const TwoModeOperator<Real>& op) {
    const Eigen::Index d = op.cutoff.dim();
    Real worst = 0;
    for (Eigen::Index r = 0; r < d * d; ++r) {
        for (Eigen::Index c = 0; c < d * d; ++c) {
            if (r / d + r % d != c / d + c % d) worst = std::max(worst, std::abs(op.matrix(r, c)));
        }
    }
    return worst;
}

}  // namespace fockoptics
