#pragma once

#include <optional>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "fockoptics/bosonic_ops.hpp"
#include "fockoptics/fock.hpp"
#include "fockoptics/splitter.hpp"

namespace fockoptics {

/// Below this probability a post-selection outcome counts as impossible.
inline constexpr double kImpossibleProbability = 1e-15;

template <typename Real = double>
struct Splitter {
    SplitterParams<Real> params;
};

/// e^{i n phi} on one arm.
template <typename Real = double>
struct PhaseShift {
    Mode mode;
    Real phi;
};

/// Routing mirror; acts as the identity on the two-mode state.
struct Mirror {};

template <typename Real = double>
using CircuitElement = std::variant<Splitter<Real>, PhaseShift<Real>, Mirror>;

enum class BsMethod { Analytic, Numeric };

template <typename Real = double>
struct Circuit {
    FockCutoff cutoff;
    std::vector<CircuitElement<Real>> elements;
};

/// SF1, mirrors M1 and M2, an optional phase shifter between the arms, SF2.
template <typename Real>
Circuit<Real> mach_zehnder(const SplitterParams<Real>& first, const SplitterParams<Real>& second,
                           FockCutoff cutoff,
                           std::type_identity_t<std::optional<PhaseShift<Real>>> phase = std::nullopt) {
    Circuit<Real> c{cutoff, {}};
    c.elements.push_back(Splitter<Real>{first});
    c.elements.push_back(Mirror{});
    c.elements.push_back(Mirror{});
    if (phase) c.elements.push_back(*phase);
    c.elements.push_back(Splitter<Real>{second});
    return c;
}

template <typename Real>
BasicTwoModeState<Real> apply_element(const BasicTwoModeState<Real>& state,
                                      const CircuitElement<Real>& element,
                                      BsMethod method = BsMethod::Analytic) {
    struct Visitor {
        const BasicTwoModeState<Real>& state;
        BsMethod method;
        BasicTwoModeState<Real> operator()(const Splitter<Real>& s) const {
            return method == BsMethod::Analytic ? apply_bs_analytic(state, s.params)
                                                : apply_bs_numeric(state, s.params);
        }
        BasicTwoModeState<Real> operator()(const PhaseShift<Real>& p) const {
            return apply(phase_matrix<Real>(p.phi, state.cutoff()), p.mode, state);
        }
        BasicTwoModeState<Real> operator()(const Mirror&) const { return state; }
    };
    return std::visit(Visitor{state, method}, element);
}

template <typename Real>
BasicTwoModeState<Real> run_circuit(const BasicTwoModeState<Real>& input, const Circuit<Real>& circuit,
                                    BsMethod method = BsMethod::Analytic) {
    if (!(input.cutoff() == circuit.cutoff)) throw CutoffMismatch("input and circuit cutoffs differ");
    BasicTwoModeState<Real> state = input;
    for (const auto& element : circuit.elements) state = apply_element(state, element, method);
    return state;
}

/// Marginal photon-count distribution of one mode, indexed by count.
template <typename Real>
std::vector<Real> detection_distribution(const BasicTwoModeState<Real>& state, Mode mode) {
    const auto& amps = state.amplitudes();
    std::vector<Real> p(state.cutoff().dim());
    for (Eigen::Index k = 0; k < state.cutoff().dim(); ++k) {
        p[k] = mode == Mode::A ? amps.row(k).squaredNorm() : amps.col(k).squaredNorm();
    }
    return p;
}

/// Component of the state with `mode` holding exactly k photons, unnormalized.
template <typename Real>
BasicTwoModeState<Real> project(const BasicTwoModeState<Real>& state, Mode mode, int k) {
    if (!state.cutoff().contains(k)) {
        throw CutoffExceeded("outcome " + std::to_string(k) + " exceeds n_max = " +
                             std::to_string(state.cutoff().n_max()));
    }
    typename BasicTwoModeState<Real>::Amplitudes amps =
        BasicTwoModeState<Real>::Amplitudes::Zero(state.cutoff().dim(), state.cutoff().dim());
    if (mode == Mode::A) {
        amps.row(k) = state.amplitudes().row(k);
    } else {
        amps.col(k) = state.amplitudes().col(k);
    }
    return BasicTwoModeState<Real>(state.cutoff(), std::move(amps));
}

template <typename Real = double>
struct MeasurementRecord {
    Mode mode;
    int outcome;
    Real probability;
    /// Post-measurement state; empty when the outcome is impossible.
    std::optional<BasicTwoModeState<Real>> conditional_state;

    bool heralded() const noexcept { return conditional_state.has_value(); }
};

/// Ideal photon-number-resolving detection of `mode` with outcome k.
template <typename Real>
MeasurementRecord<Real> measure_mode(const BasicTwoModeState<Real>& state, Mode mode, int k) {
    BasicTwoModeState<Real> projected = project(state, mode, k);
    const Real probability = projected.squared_norm();
    MeasurementRecord<Real> record{mode, k, probability, std::nullopt};
    if (probability >= Real(kImpossibleProbability)) record.conditional_state = normalize(projected);
    return record;
}

template <typename Real = double>
struct LadderResult {
    /// Heralded output; empty when some stage failed.
    std::optional<BasicTwoModeState<Real>> state;
    Real success_probability = 0;
    std::vector<Real> stage_probabilities;

    bool heralded() const noexcept { return state.has_value(); }
};

/// Repeated heralded Fock-state growth. Mode b starts in |1>. Each stage
/// feeds |ancilla_photons>_a alongside the current mode-b state through a
/// Mach-Zehnder with both splitters at `theta`, then post-selects vacuum on
/// mode a. Stage probabilities multiply into the overall success probability.
template <typename Real = double>
LadderResult<Real> fock_ladder_protocol(int n_stages, Real theta, FockCutoff cutoff,
                                        int ancilla_photons = 1, BsMethod method = BsMethod::Analytic) {
    if (n_stages < 1) throw std::invalid_argument("fock ladder needs at least one stage");
    if (ancilla_photons != 0 && ancilla_photons != 1) {
        throw std::invalid_argument("ancilla photon number must be 0 or 1");
    }
    const int required = 1 + n_stages * ancilla_photons;
    if (cutoff.n_max() < required) {
        throw CutoffTooSmall("fock ladder photon count exceeds the cutoff", required);
    }
    const SplitterParams<Real> params(theta);
    const Circuit<Real> stage = mach_zehnder(params, params, cutoff);

    LadderResult<Real> result;
    result.success_probability = Real(1);
    CVector<Real> current = CVector<Real>::Zero(cutoff.dim());
    current(1) = Real(1);
    CVector<Real> ancilla = CVector<Real>::Zero(cutoff.dim());
    ancilla(ancilla_photons) = Real(1);

    for (int s = 0; s < n_stages; ++s) {
        const auto out = run_circuit(product_state<Real>(ancilla, current, cutoff), stage, method);
        const auto record = measure_mode(out, Mode::A, 0);
        result.stage_probabilities.push_back(record.probability);
        result.success_probability *= record.probability;
        if (!record.heralded()) {
            result.success_probability = Real(0);
            return result;
        }
        current = record.conditional_state->amplitudes().row(0).transpose();
    }
    result.state = embed<Real>(current, Mode::B, cutoff);
    return result;
}

}  // namespace fockoptics
