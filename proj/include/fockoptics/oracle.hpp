#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>

#include "fockoptics/fock.hpp"
#include "fockoptics/splitter.hpp"

// Closed-form output states of the worked interferometer cases. Each builder
// writes the amplitudes exactly as the formula prints them, phases included,
// so the numeric engine can be compared phase-sensitively as well as by
// fidelity. The generic single-splitter case is the engine itself
// (apply_bs_analytic) and has no fixture here.

namespace fockoptics {

enum class CaseId {
    Case1SinglePhotonOneBs,
    Case2CoherentOneBs,
    Case4SinglePhotonMz,
    Case5TwoPhotonMz,
    Case6OneOneMz,
    Case7CoherentMz,
    Case8CatMz,
};

namespace detail {

// (T1 T2 - R1 R2): amplitude a^dagger keeps through two splitters.
template <typename Real>
Real mz_direct(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2) {
    return p1.t() * p2.t() - p1.r() * p2.r();
}

// (T1 R2 + R1 T2): magnitude a^dagger transfers onto i b^dagger.
template <typename Real>
Real mz_cross(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2) {
    return p1.t() * p2.r() + p1.r() * p2.t();
}

template <typename Real>
BasicTwoModeState<Real> literal(FockCutoff cutoff,
                                std::initializer_list<std::tuple<int, int, std::complex<Real>>> terms) {
    typename BasicTwoModeState<Real>::Amplitudes amps =
        BasicTwoModeState<Real>::Amplitudes::Zero(cutoff.dim(), cutoff.dim());
    for (const auto& [n, m, c] : terms) {
        if (!cutoff.contains(n) || !cutoff.contains(m)) {
            throw CutoffExceeded("oracle term |" + std::to_string(n) + "," + std::to_string(m) +
                                 "> exceeds the cutoff");
        }
        amps(n, m) += c;
    }
    return BasicTwoModeState<Real>(cutoff, std::move(amps));
}

}  // namespace detail

/// T|1,0> + iR|0,1>.
template <typename Real>
BasicTwoModeState<Real> oracle_case1(const SplitterParams<Real>& p, FockCutoff cutoff) {
    using C = std::complex<Real>;
    return detail::literal<Real>(cutoff, {{1, 0, C(p.t(), 0)}, {0, 1, C(0, p.r())}});
}

/// |T alpha>_a |iR alpha>_b.
template <typename Real>
BasicTwoModeState<Real> oracle_case2(const SplitterParams<Real>& p, const CoherentSpec<Real>& in,
                                     FockCutoff cutoff) {
    const std::complex<Real> ir(0, p.r());
    return product_state<Real>(coherent_vector(CoherentSpec<Real>{p.t() * in.alpha, in.truncation_tail}, cutoff),
                               coherent_vector(CoherentSpec<Real>{ir * in.alpha, in.truncation_tail}, cutoff),
                               cutoff);
}

/// (T1T2 - R1R2)|1,0> + i(R1T2 + R2T1)|0,1>.
template <typename Real>
BasicTwoModeState<Real> oracle_case4(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2,
                                     FockCutoff cutoff) {
    using C = std::complex<Real>;
    return detail::literal<Real>(cutoff, {{1, 0, C(p1.t() * p2.t() - p1.r() * p2.r(), 0)},
                                          {0, 1, C(0, p1.r() * p2.t() + p2.r() * p1.t())}});
}

/// (T1T2 - R1R2)^2 |2,0> - (T1R2 + T2R1)^2 |0,2>
///   + i sqrt(2) (T1^2 T2 R2 + T1 T2^2 R1 - T1 R1 R2^2 - R1^2 R2 T2) |1,1>.
template <typename Real>
BasicTwoModeState<Real> oracle_case5(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2,
                                     FockCutoff cutoff) {
    using C = std::complex<Real>;
    const Real t1 = p1.t(), r1 = p1.r(), t2 = p2.t(), r2 = p2.r();
    const Real u = t1 * t2 - r1 * r2;
    const Real v = t1 * r2 + t2 * r1;
    const Real w = t1 * t1 * t2 * r2 + t1 * t2 * t2 * r1 - t1 * r1 * r2 * r2 - r1 * r1 * r2 * t2;
    return detail::literal<Real>(
        cutoff, {{2, 0, C(u * u, 0)}, {0, 2, C(-v * v, 0)}, {1, 1, C(0, std::sqrt(Real(2)) * w)}});
}

/// [(T1T2 - R1R2)^2 - (T1R2 + T2R1)^2] |1,1>
///   + i sqrt(2) (T1^2 T2 R2 + T1 T2^2 R1 - T1 R1 R2^2 - R1^2 R2 T2) (|2,0> + |0,2>).
template <typename Real>
BasicTwoModeState<Real> oracle_case6(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2,
                                     FockCutoff cutoff) {
    using C = std::complex<Real>;
    const Real t1 = p1.t(), r1 = p1.r(), t2 = p2.t(), r2 = p2.r();
    const Real u = t1 * t2 - r1 * r2;
    const Real v = t1 * r2 + t2 * r1;
    const Real w = t1 * t1 * t2 * r2 + t1 * t2 * t2 * r1 - t1 * r1 * r2 * r2 - r1 * r1 * r2 * t2;
    const C pair(0, std::sqrt(Real(2)) * w);
    return detail::literal<Real>(cutoff, {{1, 1, C(u * u - v * v, 0)}, {2, 0, pair}, {0, 2, pair}});
}

/// |(T1T2 - R1R2) alpha>_a |(T1R2 + R1T2) i alpha>_b.
template <typename Real>
BasicTwoModeState<Real> oracle_case7(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2,
                                     const CoherentSpec<Real>& in, FockCutoff cutoff) {
    detail::check_tail(in.alpha, in.truncation_tail, cutoff);
    const std::complex<Real> ia(0, 1);
    const Real u = detail::mz_direct(p1, p2);
    const Real v = detail::mz_cross(p1, p2);
    return product_state<Real>(coherent_vector(CoherentSpec<Real>{u * in.alpha, in.truncation_tail}, cutoff),
                               coherent_vector(CoherentSpec<Real>{v * ia * in.alpha, in.truncation_tail}, cutoff),
                               cutoff);
}

/// eta (|u alpha>_a |i v alpha>_b +- |u beta>_a |i v beta>_b) with
/// u = T1T2 - R1R2 and v = T1R2 + R1T2; eta is taken from the truncated
/// superposition.
template <typename Real>
BasicTwoModeState<Real> oracle_case8(const SplitterParams<Real>& p1, const SplitterParams<Real>& p2,
                                     const CatSpec<Real>& in, FockCutoff cutoff) {
    if (in.sign != 1 && in.sign != -1) throw std::invalid_argument("cat sign must be +1 or -1");
    detail::check_tail(in.alpha, in.truncation_tail, cutoff);
    detail::check_tail(in.beta, in.truncation_tail, cutoff);
    const std::complex<Real> ia(0, 1);
    const Real u = detail::mz_direct(p1, p2);
    const Real v = detail::mz_cross(p1, p2);
    const auto branch = [&](std::complex<Real> x) -> CMatrix<Real> {
        return coherent_amplitudes(u * x, cutoff) * coherent_amplitudes(ia * v * x, cutoff).transpose();
    };
    CMatrix<Real> amps = branch(in.alpha) + Real(in.sign) * branch(in.beta);
    return normalize(BasicTwoModeState<Real>(cutoff, std::move(amps)));
}

}  // namespace fockoptics
