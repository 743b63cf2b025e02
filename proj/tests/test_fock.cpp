#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fockoptics/fock.hpp"
#include "test_support.hpp"

using namespace fockoptics;
using fockoptics::testing::cd;
using fockoptics::testing::poisson_pmf;
using fockoptics::testing::poisson_sum;

TEST(FockCutoff, Dimensions) {
    const FockCutoff c(4);
    EXPECT_EQ(c.dim(), 5);
    EXPECT_EQ(c.two_mode_dim(), 25);
    EXPECT_THROW(FockCutoff(0), std::invalid_argument);
    EXPECT_THROW(FockCutoff(kMaxCutoff + 1), std::invalid_argument);
}

TEST(FockState, SinglePhotonInModeA) {
    const auto s = fock_state(1, 0, FockCutoff(4));
    for (int n = 0; n <= 4; ++n) {
        for (int m = 0; m <= 4; ++m) EXPECT_EQ(s(n, m), (n == 1 && m == 0) ? cd(1) : cd(0));
    }
}

TEST(FockState, VacuumHasUnitNorm) {
    const auto s = fock_state(0, 0, FockCutoff(4));
    EXPECT_EQ(s.squared_norm(), 1.0);
    EXPECT_EQ(s(0, 0), cd(1));
}

TEST(FockState, AboveCutoffThrows) {
    EXPECT_THROW(fock_state(5, 0, FockCutoff(4)), CutoffExceeded);
    EXPECT_THROW(fock_state(0, 5, FockCutoff(4)), CutoffExceeded);
}

TEST(FockState, BasisIsOrthonormal) {
    const FockCutoff c(3);
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m)
            for (int n2 = 0; n2 <= 3; ++n2)
                for (int m2 = 0; m2 <= 3; ++m2) {
                    const cd ip = inner_product(fock_state(n, m, c), fock_state(n2, m2, c));
                    EXPECT_EQ(ip, cd((n == n2 && m == m2) ? 1.0 : 0.0));
                }
}

TEST(CoherentState, ZeroAmplitudeIsVacuum) {
    const auto s = coherent_state(CoherentSpec<double>{0.0}, Mode::A, FockCutoff(4));
    EXPECT_LT(max_amplitude_deviation(s, vacuum(FockCutoff(4))), 1e-15);
}

TEST(CoherentState, MeanPhotonNumberMatchesDirectSum) {
    // Oracle: sum_n n e^{-1}/n! over n <= 200 by explicit products.
    double oracle = 0;
    for (int n = 1; n <= 200; ++n) oracle += n * poisson_pmf(1.0, n);
    const auto s = coherent_state(CoherentSpec<double>{1.0}, Mode::A, FockCutoff(30));
    double mean = 0;
    for (int n = 0; n <= 30; ++n) mean += n * std::norm(s(n, 0));
    EXPECT_NEAR(mean, oracle, 1e-10);
    EXPECT_NEAR(mean, 1.0, 1e-10);
}

TEST(CoherentState, CutoffTooSmallReportsRequirement) {
    // Poisson(4) mass above 4, summed directly: 0.371163... >> 1e-12.
    EXPECT_NEAR(1.0 - poisson_sum(4.0, 0, 4), 0.37116306482012648, 1e-14);
    try {
        coherent_state(CoherentSpec<double>{2.0}, Mode::A, FockCutoff(4));
        FAIL() << "expected CutoffTooSmall";
    } catch (const CutoffTooSmall& e) {
        // Direct summation: the first n_max with Poisson(4) tail <= 1e-12 is 25.
        EXPECT_EQ(e.required_n_max(), 25);
    }
}

TEST(CoherentState, TailMatchesDirectSummation) {
    for (double mean : {0.5, 1.0, 2.0, 4.0}) {
        for (int n_max : {3, 6, 10}) {
            const double oracle = poisson_sum(mean, n_max + 1, 400);
            EXPECT_NEAR(poisson_tail_above(mean, n_max), oracle, 1e-14 + 1e-12 * oracle);
        }
    }
}

TEST(CoherentState, PoissonWeightsBeforeRenormalization) {
    const cd alpha(1.3, -0.4);
    const auto c = coherent_amplitudes(alpha, FockCutoff(30));
    for (int n = 0; n <= 30; ++n) EXPECT_NEAR(std::norm(c(n)), poisson_pmf(std::norm(alpha), n), 1e-12);
}

TEST(CoherentState, ModeBPlacement) {
    const auto s = coherent_state(CoherentSpec<double>{cd(0.5, 0.5)}, Mode::B, FockCutoff(20));
    EXPECT_NEAR(s.squared_norm(), 1.0, 1e-14);
    EXPECT_NEAR(s.amplitudes().row(0).squaredNorm(), 1.0, 1e-14);
}

TEST(CatState, EqualComponentsReduceToCoherent) {
    const FockCutoff c(30);
    const auto cat = cat_state(CatSpec<double>{1.0, 1.0, +1}, Mode::A, c);
    const auto coh = coherent_state(CoherentSpec<double>{1.0}, Mode::A, c);
    EXPECT_NEAR(std::norm(inner_product(cat.state, coh)), 1.0, 1e-12);
}

TEST(CatState, OddCatHasNoEvenComponents) {
    const auto cat = cat_state(CatSpec<double>{1.0, -1.0, -1}, Mode::A, FockCutoff(30));
    for (int k = 0; 2 * k <= 30; ++k) EXPECT_LT(std::abs(cat.state(2 * k, 0)), 1e-12);
    EXPECT_NEAR(cat.state.squared_norm(), 1.0, 1e-12);
}

TEST(CatState, EtaMatchesOverlapFormula) {
    // <1|-1> = e^{-2}; eta = (2 + 2 e^{-2})^{-1/2} = 0.66362530014228754.
    const auto cat = cat_state(CatSpec<double>{1.0, -1.0, +1}, Mode::A, FockCutoff(30));
    EXPECT_NEAR(cat.spec.eta, 0.66362530014228754, 1e-10);
    EXPECT_NEAR(cat.spec.eta, 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-2.0)), 1e-10);
}

TEST(CatState, VanishingSuperpositionThrows) {
    EXPECT_THROW(cat_state(CatSpec<double>{0.7, 0.7, -1}, Mode::A, FockCutoff(20)), ZeroState);
    EXPECT_THROW(cat_state(CatSpec<double>{0.7, -0.7, 2}, Mode::A, FockCutoff(20)), std::invalid_argument);
    EXPECT_THROW(cat_state(CatSpec<double>{3.0, -3.0, 1}, Mode::A, FockCutoff(10)), CutoffTooSmall);
}

TEST(InnerProduct, Examples) {
    const FockCutoff c(4);
    EXPECT_EQ(inner_product(fock_state(1, 0, c), fock_state(1, 0, c)), cd(1));
    EXPECT_EQ(inner_product(fock_state(1, 0, c), fock_state(0, 1, c)), cd(0));
}

TEST(InnerProduct, CoherentWithVacuum) {
    const FockCutoff c(30);
    const cd ip = inner_product(coherent_state(CoherentSpec<double>{1.0}, Mode::A, c), vacuum(c));
    EXPECT_NEAR(std::abs(ip - std::exp(-0.5)), 0.0, 1e-10);
}

TEST(InnerProduct, CutoffMismatch) {
    EXPECT_THROW(inner_product(vacuum(FockCutoff(3)), vacuum(FockCutoff(4))), CutoffMismatch);
}

TEST(Normalize, ScalesByPositiveReal) {
    const FockCutoff c(3);
    const TwoModeState doubled(c, 2.0 * fock_state(1, 0, c).amplitudes());
    EXPECT_LT(max_amplitude_deviation(normalize(doubled), fock_state(1, 0, c)), 1e-15);

    const TwoModeState phased(c, cd(1, 1) * fock_state(0, 1, c).amplitudes());
    const auto n = normalize(phased);
    EXPECT_NEAR(std::abs(n(0, 1) - cd(1, 1) / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Normalize, ZeroStateThrows) {
    EXPECT_THROW(normalize(TwoModeState(FockCutoff(3))), ZeroState);
}

TEST(Normalize, IdempotentOnRandomTensors) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    const FockCutoff c(6);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXcd amps(c.dim(), c.dim());
        for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = cd(g(rng), g(rng)) * 10.0;
        const auto once = normalize(TwoModeState(c, amps));
        const auto twice = normalize(once);
        EXPECT_NEAR(once.squared_norm(), 1.0, 1e-12);
        EXPECT_LE(max_amplitude_deviation(once, twice), 1e-15);
    }
}

TEST(TwoModeState, FlattenRoundTrip) {
    std::mt19937_64 rng(3);
    const FockCutoff c(5);
    const auto s = fockoptics::testing::random_physical_state(c, rng);
    EXPECT_EQ(TwoModeState::from_flattened(c, s.flattened()).amplitudes(), s.amplitudes());
    EXPECT_EQ(s.flattened()(1 * c.dim() + 2), s(1, 2));
}
