#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fockoptics/interferometer.hpp"
#include "fockoptics/metrics.hpp"
#include "fockoptics/oracle.hpp"
#include "test_support.hpp"

using namespace fockoptics;
using fockoptics::testing::cd;
using fockoptics::testing::fock_transition;
using fockoptics::testing::kPi;
using fockoptics::testing::phase_transfer;
using fockoptics::testing::random_physical_state;
using fockoptics::testing::splitter_transfer;

namespace {

using P = SplitterParams<double>;

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double p_a1_after_mz(double theta, std::optional<double> phi = std::nullopt) {
    const FockCutoff c(2);
    std::optional<PhaseShift<double>> shift;
    if (phi) shift = PhaseShift<double>{Mode::A, *phi};
    const auto out = run_circuit(fock_state(1, 0, c), mach_zehnder(P(theta), P(theta), c, shift));
    return detection_distribution(out, Mode::A)[1];
}

}  // namespace

TEST(RunCircuit, EqualSplittersMatchCase4) {
    const FockCutoff c(3);
    for (double theta : {0.1, kPi / 8, 0.9}) {
        const auto out = run_circuit(fock_state(1, 0, c), mach_zehnder(P(theta), P(theta), c));
        EXPECT_GE(fidelity(out, oracle_case4(P(theta), P(theta), c)), 1 - 1e-10);
    }
}

TEST(RunCircuit, EmptyCircuitIsIdentity) {
    std::mt19937_64 rng(1);
    const auto s = random_physical_state(FockCutoff(5), rng);
    EXPECT_EQ(run_circuit(s, Circuit<double>{FockCutoff(5), {}}).amplitudes(), s.amplitudes());
}

TEST(RunCircuit, MirrorIsIdentity) {
    std::mt19937_64 rng(2);
    const auto s = random_physical_state(FockCutoff(5), rng);
    EXPECT_EQ(run_circuit(s, Circuit<double>{FockCutoff(5), {Mirror{}, Mirror{}}}).amplitudes(), s.amplitudes());
}

TEST(RunCircuit, CutoffMismatch) {
    EXPECT_THROW(run_circuit(vacuum(FockCutoff(3)), Circuit<double>{FockCutoff(4), {}}), CutoffMismatch);
}

TEST(RunCircuit, PhaseBetweenEighthSplittersSendsPhotonToModeA) {
    // Transfer-matrix oracle: BS * diag(e^{i pi}, 1) * BS, column a.
    const Eigen::Matrix2cd u = splitter_transfer(kPi / 8) * phase_transfer(kPi, 0) * splitter_transfer(kPi / 8);
    EXPECT_NEAR(std::norm(u(0, 0)), 1.0, 1e-15);
    const FockCutoff c(2);
    const Circuit<double> circuit{c, {Splitter<double>{P(kPi / 8)}, PhaseShift<double>{Mode::A, kPi},
                                      Splitter<double>{P(kPi / 8)}}};
    const auto out = run_circuit(fock_state(1, 0, c), circuit);
    EXPECT_NEAR(detection_distribution(out, Mode::A)[1], 1.0, 1e-15);
}

TEST(RunCircuit, PhaseCircuitMatchesTransferOracle) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const FockCutoff c(4);
    for (int i = 0; i < 20; ++i) {
        const double t1 = u(rng), t2 = u(rng), phi = u(rng);
        const Eigen::Matrix2cd total = splitter_transfer(t2) * phase_transfer(0, phi) * splitter_transfer(t1);
        const Circuit<double> circuit{c, {Splitter<double>{P(t1)}, PhaseShift<double>{Mode::B, phi},
                                          Splitter<double>{P(t2)}}};
        for (BsMethod method : {BsMethod::Analytic, BsMethod::Numeric}) {
            const auto out = run_circuit(fock_state(1, 2, c), circuit, method);
            for (int p = 0; p <= 3; ++p) EXPECT_LT(std::abs(out(p, 3 - p) - fock_transition(total, 1, 2, p, 3 - p)), 1e-13);
        }
    }
}

TEST(RunCircuit, NormPreserved) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const FockCutoff c(8);
    for (int i = 0; i < 20; ++i) {
        const auto s = random_physical_state(c, rng);
        const auto circuit = mach_zehnder(P(u(rng)), P(u(rng)), c, PhaseShift<double>{Mode::A, u(rng)});
        EXPECT_NEAR(run_circuit(s, circuit).norm(), 1.0, 1e-12);
        EXPECT_NEAR(run_circuit(s, circuit, BsMethod::Numeric).norm(), 1.0, 1e-12);
    }
}

TEST(MachZehnder, ModeAProbabilityIsCosSquaredTwoTheta) {
    for (int i = 0; i < 100; ++i) {
        const double theta = kPi * i / 99;
        EXPECT_NEAR(p_a1_after_mz(theta), std::pow(std::cos(2 * theta), 2), 1e-12) << theta;
    }
}

TEST(MachZehnder, QuarterPiNull) {
    EXPECT_LT(p_a1_after_mz(kPi / 4), 1e-20);
}

TEST(MachZehnder, PhaseShiftLiftsTheNull) {
    const double null = p_a1_after_mz(kPi / 4);
    for (double phi : {0.01, 0.5, kPi / 2, kPi, 4.0, 2 * kPi - 0.01}) {
        const double p = p_a1_after_mz(kPi / 4, phi);
        EXPECT_GT(p, null);
        // Transfer-matrix oracle at T = R: |T^2 e^{i phi} - R^2|^2 = sin^2(phi / 2).
        EXPECT_NEAR(p, std::pow(std::sin(phi / 2), 2), 1e-14);
    }
    EXPECT_GT(p_a1_after_mz(kPi / 4, kPi), 0.99);
}

TEST(Detection, DistributionsFromOracles) {
    const FockCutoff c(3);
    const auto d4 = detection_distribution(oracle_case4(P(kPi / 8), P(kPi / 8), c), Mode::A);
    EXPECT_NEAR(d4[0], 0.5, 1e-15);
    EXPECT_NEAR(d4[1], 0.5, 1e-15);
    const auto d6 = detection_distribution(oracle_case6(P(kPi / 8), P(kPi / 8), c), Mode::A);
    EXPECT_NEAR(d6[0], 0.5, 1e-15);
    EXPECT_LT(d6[1], 1e-30);
    EXPECT_NEAR(d6[2], 0.5, 1e-15);
    for (Mode m : {Mode::A, Mode::B}) {
        const auto dv = detection_distribution(vacuum(c), m);
        EXPECT_EQ(dv[0], 1.0);
        EXPECT_EQ(sum(dv), 1.0);
    }
}

TEST(Detection, SumRuleAndReconstruction) {
    std::mt19937_64 rng(21);
    const FockCutoff c(7);
    for (int i = 0; i < 20; ++i) {
        const auto s = apply_bs_analytic(random_physical_state(c, rng), P(0.4 * i));
        for (Mode mode : {Mode::A, Mode::B}) {
            EXPECT_NEAR(sum(detection_distribution(s, mode)), 1.0, 1e-12);
            Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(c.dim(), c.dim());
            double total = 0;
            for (int k = 0; k <= c.n_max(); ++k) {
                const auto rec = measure_mode(s, mode, k);
                total += rec.probability;
                if (rec.heralded()) {
                    EXPECT_NEAR(rec.conditional_state->norm(), 1.0, 1e-12);
                    rebuilt += std::sqrt(rec.probability) * rec.conditional_state->amplitudes();
                }
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_LT((rebuilt - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-7);
        }
    }
}

TEST(Measure, HeraldsTwoPhotonState) {
    const FockCutoff c(3);
    const auto rec = measure_mode(oracle_case6(P(kPi / 8), P(kPi / 8), c), Mode::A, 0);
    EXPECT_NEAR(rec.probability, 0.5, 1e-12);
    ASSERT_TRUE(rec.heralded());
    EXPECT_NEAR(fidelity(*rec.conditional_state, fock_state(0, 2, c)), 1.0, 1e-12);
}

TEST(Measure, TrivialOutcomes) {
    const FockCutoff c(3);
    const auto sure = measure_mode(fock_state(1, 0, c), Mode::A, 1);
    EXPECT_EQ(sure.probability, 1.0);
    EXPECT_EQ(sure.conditional_state->amplitudes(), fock_state(1, 0, c).amplitudes());
    const auto never = measure_mode(fock_state(1, 0, c), Mode::B, 3);
    EXPECT_EQ(never.probability, 0.0);
    EXPECT_FALSE(never.heralded());
    EXPECT_THROW(measure_mode(fock_state(1, 0, c), Mode::B, 4), CutoffExceeded);
}

TEST(Ladder, OneStageHeraldsTwoPhotons) {
    const auto r = fock_ladder_protocol(1, kPi / 8, FockCutoff(4));
    ASSERT_TRUE(r.heralded());
    EXPECT_NEAR(r.success_probability, 0.5, 1e-12);
    EXPECT_NEAR(fidelity(*r.state, fock_state(0, 2, FockCutoff(4))), 1.0, 1e-12);
}

TEST(Ladder, StageProbabilitiesMatchPermanents) {
    // Each stage is |1,n> -> project mode a onto 0 of the balanced total transfer.
    const Eigen::Matrix2cd total = splitter_transfer(kPi / 8) * splitter_transfer(kPi / 8);
    for (BsMethod method : {BsMethod::Analytic, BsMethod::Numeric}) {
        const int stages = 6;
        const auto r = fock_ladder_protocol(stages, kPi / 8, FockCutoff(1 + stages), 1, method);
        ASSERT_TRUE(r.heralded());
        double cumulative = 1;
        for (int s = 0; s < stages; ++s) {
            const int n = s + 1;
            const double expected = std::norm(fock_transition(total, 1, n, 0, n + 1));
            EXPECT_NEAR(r.stage_probabilities[s], expected, 1e-12);
            EXPECT_NEAR(expected, (n + 1) / std::pow(2.0, n + 1), 1e-14);
            EXPECT_LE(r.stage_probabilities[s], 0.5 + 1e-12);
            cumulative *= expected;
            EXPECT_LE(cumulative, std::pow(2.0, -(s + 1)) + 1e-12);
        }
        EXPECT_NEAR(r.success_probability, cumulative, 1e-12);
        EXPECT_NEAR(fidelity(*r.state, fock_state(0, stages + 1, FockCutoff(1 + stages))), 1.0, 1e-12);
    }
}

TEST(Ladder, VacuumAncillaAndErrors) {
    // With vacuum ancillas at theta = pi/8 the photon in b leaves with probability 1/2 per stage.
    const auto r = fock_ladder_protocol(3, kPi / 8, FockCutoff(2), 0);
    ASSERT_TRUE(r.heralded());
    EXPECT_NEAR(r.success_probability, 0.125, 1e-12);
    EXPECT_THROW(fock_ladder_protocol(0, 0.3, FockCutoff(4)), std::invalid_argument);
    EXPECT_THROW(fock_ladder_protocol(2, 0.3, FockCutoff(4), 2), std::invalid_argument);
    try {
        fock_ladder_protocol(5, 0.3, FockCutoff(4));
        FAIL() << "expected CutoffTooSmall";
    } catch (const CutoffTooSmall& e) {
        EXPECT_EQ(e.required_n_max(), 6);
    }
}

TEST(Ladder, ImpossibleOutcomeIsFlagged) {
    // At theta = pi/4 the balanced stages swap the modes: |1,1> returns to |1,1>
    // up to sign, so vacuum in a never occurs.
    const auto r = fock_ladder_protocol(2, kPi / 4, FockCutoff(4));
    EXPECT_FALSE(r.heralded());
    EXPECT_EQ(r.success_probability, 0.0);
    EXPECT_EQ(r.stage_probabilities.size(), 1u);
}
