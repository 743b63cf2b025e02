#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "fockoptics/interferometer.hpp"
#include "fockoptics/metrics.hpp"
#include "fockoptics/oracle.hpp"
#include "fockoptics/scenario.hpp"

namespace fockoptics {

namespace {

using cd = std::complex<double>;
using P = SplitterParams<double>;
constexpr double kPi = std::numbers::pi;

class Suite {
public:
    explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

    void add(std::string name, double deviation, double tolerance) {
        out_.push_back({std::move(name), deviation, tolerance, deviation <= tolerance});
    }

private:
    std::vector<CheckResult>& out_;
};

TwoModeState literal(FockCutoff c, std::initializer_list<std::tuple<int, int, cd>> terms) {
    return detail::literal<double>(c, terms);
}

TwoModeState mz(const TwoModeState& in, double t1, double t2, std::optional<double> phi = std::nullopt) {
    std::optional<PhaseShift<double>> shift;
    if (phi) shift = PhaseShift<double>{Mode::A, *phi};
    return run_circuit(in, mach_zehnder(P(t1), P(t2), in.cutoff(), shift));
}

/// Random state supported on n + m <= n_max, where both splitter routes are exact.
TwoModeState random_state(FockCutoff c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix<double> amps = CMatrix<double>::Zero(c.dim(), c.dim());
    for (int n = 0; n <= c.n_max(); ++n) {
        for (int m = 0; n + m <= c.n_max(); ++m) amps(n, m) = cd(g(rng), g(rng));
    }
    return normalize(TwoModeState(c, amps));
}

std::string angle_label(double theta) {
    if (theta == kPi / 8) return "pi/8";
    if (theta == kPi / 4) return "pi/4";
    if (theta == kPi / 2) return "pi/2";
    if (theta == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", theta);
    return buf;
}

double total_mean(const TwoModeState& s) { return photon_stats(s, Mode::A).mean + photon_stats(s, Mode::B).mean; }

}  // namespace

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

VerificationReport run_verification_suite(const VerificationOptions& options) {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    VerificationReport report;
    report.seed = options.seed;
    report.cutoff = options.cutoff;
    Suite suite(report.checks);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(-kPi, kPi);

    const FockCutoff cutoff(options.cutoff);
    const ExponentSign sign =
        options.flip_bs_sign ? flipped(calibrated_exponent_sign()) : calibrated_exponent_sign();
    const auto numeric = [&](const TwoModeState& s, double theta) { return apply_bs_numeric(s, P(theta), sign); };
    const FockCutoff small(std::max(options.cutoff, 2));

    // Single photon through one splitter: T|1,0> + iR|0,1>.
    {
        const auto t0 = clock::now();
        double worst = 0;
        const auto one = fock_state(1, 0, small);
        for (int i = 0; i < 50; ++i) {
            const double theta = angle(rng);
            const auto expected = oracle_case1(P(theta), small);
            worst = std::max({worst, max_amplitude_deviation(apply_bs_analytic(one, P(theta)), expected),
                              max_amplitude_deviation(numeric(one, theta), expected)});
        }
        suite.add("single_photon.amplitudes", worst, 1e-12);
        suite.add("single_photon.runtime_s", std::chrono::duration<double>(clock::now() - t0).count(), 1.0);
    }

    // Heisenberg images of the creation operators on the interior blocks.
    for (double theta : {0.3, kPi / 8, kPi / 4, 1.2}) {
        suite.add("heisenberg.a_creation@" + angle_label(theta), heisenberg_deviation(P(theta), Mode::A, cutoff, sign),
                  1e-10);
        suite.add("heisenberg.b_creation@" + angle_label(theta), heisenberg_deviation(P(theta), Mode::B, cutoff, sign),
                  1e-10);
    }

    // At cutoff 1 only the vacuum column is interior, so this is S a^dagger S^dagger |0,0>
    // against T|1,0> + iR|0,1>: the single-photon block alone.
    suite.add("heisenberg.single_photon_block@0.3", heisenberg_deviation(P(0.3), Mode::A, FockCutoff(1), sign), 1e-12);

    // Commutator series of the conjugated creation operator.
    for (double theta : {0.1, kPi / 8, kPi / 4, kPi / 2}) {
        suite.add("bch.order20@" + angle_label(theta), bch_series_check(P(theta), 20, cutoff, sign), 1e-8);
    }
    suite.add("bch.order30@pi/4", bch_series_check(P(kPi / 4), 30, cutoff, sign), 1e-12);

    // Coherent input through one splitter factorizes into |T alpha>|iR alpha>.
    {
        double fid = 0, mean = 0;
        for (cd alpha : {cd(1), cd(2), cd(1, 1)}) {
            const FockCutoff c(std::max(options.cutoff, required_cutoff(alpha)));
            const auto in = coherent_state(CoherentSpec<double>{alpha}, Mode::A, c);
            for (double theta : {kPi / 8, kPi / 4}) {
                const auto out = apply_bs_analytic(in, P(theta));
                fid = std::max(fid, 1 - fidelity(out, oracle_case2(P(theta), CoherentSpec<double>{alpha}, c)));
                mean = std::max(mean, std::abs(total_mean(out) - total_mean(in)));
            }
        }
        suite.add("coherent_split.fidelity", fid, 1e-10);
        suite.add("coherent_split.mean_total", mean, 1e-12);
    }

    // Single photon through a Mach-Zehnder with equal splitters.
    {
        const auto one = fock_state(1, 0, small);
        double worst = 0;
        for (int i = 0; i <= 100; ++i) {
            const double theta = kPi * i / 100;
            const double p = detection_distribution(mz(one, theta, theta), Mode::A)[1];
            worst = std::max(worst, std::abs(p - std::pow(std::cos(2 * theta), 2)));
        }
        suite.add("mz_single_photon.cos2_2theta", worst, 1e-12);
        suite.add("mz_single_photon.null@pi/4", detection_distribution(mz(one, kPi / 4, kPi / 4), Mode::A)[1], 1e-20);
        suite.add("mz_single_photon.entropy@pi/8",
                  std::abs(schmidt_decompose(mz(one, kPi / 8, kPi / 8)).entropy_bits - 1.0), 1e-12);
    }

    // Two-photon Mach-Zehnder formulas with independent splitters.
    {
        double f5 = 0, f6 = 0, a5 = 0, a6 = 0;
        for (int i = 0; i < 50; ++i) {
            const double t1 = angle(rng), t2 = angle(rng);
            const auto out5 = mz(fock_state(2, 0, small), t1, t2);
            const auto out6 = mz(fock_state(1, 1, small), t1, t2);
            const auto o5 = oracle_case5(P(t1), P(t2), small);
            const auto o6 = oracle_case6(P(t1), P(t2), small);
            f5 = std::max(f5, 1 - fidelity(out5, o5));
            f6 = std::max(f6, 1 - fidelity(out6, o6));
            a5 = std::max(a5, max_amplitude_deviation(out5, o5));
            a6 = std::max(a6, max_amplitude_deviation(out6, o6));
        }
        suite.add("two_photon_20.random_pairs.fidelity", f5, 1e-10);
        suite.add("two_photon_11.random_pairs.fidelity", f6, 1e-10);
        suite.add("two_photon_20.random_pairs.amplitudes", a5, 1e-12);
        suite.add("two_photon_11.random_pairs.amplitudes", a6, 1e-12);

        const double h = 1 / std::sqrt(2.0);
        const auto two0 = fock_state(2, 0, small);
        const auto one1 = fock_state(1, 1, small);
        const double special20 = std::max({
            1 - fidelity(mz(two0, 0, 0), literal(small, {{2, 0, 1.0}})),
            1 - fidelity(mz(two0, kPi / 4, kPi / 4), literal(small, {{0, 2, 1.0}})),
            1 - fidelity(mz(two0, kPi / 8, kPi / 8), literal(small, {{2, 0, 0.5}, {0, 2, -0.5}, {1, 1, cd(0, h)}})),
        });
        const double special11 = std::max({
            1 - fidelity(mz(one1, kPi / 4, kPi / 4), literal(small, {{1, 1, 1.0}})),
            1 - fidelity(mz(one1, kPi / 8, kPi / 8), literal(small, {{2, 0, cd(0, h)}, {0, 2, cd(0, h)}})),
        });
        suite.add("two_photon_20.special_angles", special20, 1e-10);
        suite.add("two_photon_11.special_angles", special11, 1e-10);
    }

    // Heralding |2>_b from the balanced |1,1> output, then the repeated ladder.
    {
        const auto out = mz(fock_state(1, 1, small), kPi / 8, kPi / 8);
        const auto record = measure_mode(out, Mode::A, 0);
        suite.add("herald.probability", std::abs(record.probability - 0.5), 1e-12);
        suite.add("herald.fidelity",
                  record.heralded() ? std::abs(1 - fidelity(*record.conditional_state, fock_state(0, 2, small))) : 1.0,
                  1e-12);
        const int stages = 8;
        const auto ladder = fock_ladder_protocol(stages, kPi / 8, FockCutoff(std::max(options.cutoff, 1 + stages)));
        double excess = ladder.stage_probabilities.size() == std::size_t(stages) ? 0.0 : 1.0;
        double cumulative = 1;
        for (std::size_t s = 0; s < ladder.stage_probabilities.size(); ++s) {
            cumulative *= ladder.stage_probabilities[s];
            excess = std::max(excess, cumulative - std::pow(2.0, -double(s + 1)));
        }
        suite.add("ladder.decay", excess, 1e-12);
    }

    // Cat state through a Mach-Zehnder.
    {
        double worst = 0;
        const FockCutoff c(std::max(options.cutoff, required_cutoff(cd(2))));
        for (int s : {+1, -1}) {
            const CatSpec<double> cat{2.0, -2.0, s};
            const auto in = cat_state(cat, Mode::A, c).state;
            for (double theta : {0.0, kPi / 8, kPi / 4}) {
                worst = std::max(worst, 1 - fidelity(mz(in, theta, theta), oracle_case8(P(theta), P(theta), cat, c)));
            }
        }
        suite.add("cat_mz.fidelity", worst, 1e-9);
    }

    // Analytic and numeric splitter routes agree.
    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const auto s = random_state(cutoff, rng);
            const double theta = angle(rng);
            worst = std::max(worst, max_amplitude_deviation(apply_bs_analytic(s, P(theta)), numeric(s, theta)));
        }
        suite.add("cross_method.random_states", worst, 1e-10);
    }

    // Bose-Einstein distribution.
    {
        const FockCutoff c(60);
        const auto d = thermal_distribution(1.0, c);
        suite.add("thermal.p0", std::abs(d.probabilities[0] - 0.5), 0.0);
        suite.add("thermal.p1", std::abs(d.probabilities[1] - 0.25), 0.0);
        double mean = 0;
        for (std::size_t n = 0; n < d.probabilities.size(); ++n) mean += double(n) * d.probabilities[n];
        // Mean carried by n > n_max at <n> = 1: sum n 2^{-(n+1)} = (n_max + 2) 2^{-(n_max+1)}.
        suite.add("thermal.mean", std::abs(mean - 1.0), (c.n_max() + 2) * std::pow(2.0, -(c.n_max() + 1)) + 1e-15);
        double ratio = 0;
        for (int n = 0; n < c.n_max(); ++n) {
            ratio = std::max(ratio, std::abs(d.probabilities[n + 1] / d.probabilities[n] - 0.5));
        }
        suite.add("thermal.geometric", ratio, 1e-14);
    }

    // Phase shifter between balanced splitters lifts the null.
    {
        const auto one = fock_state(1, 0, small);
        suite.add("phase_scenario.null", detection_distribution(mz(one, kPi / 4, kPi / 4), Mode::A)[1], 1e-20);
        suite.add("phase_scenario.lifted",
                  1 - detection_distribution(mz(one, kPi / 4, kPi / 4, kPi), Mode::A)[1], 0.01);
    }

    // Every closed-form case against the engine on a grid of angles.
    {
        std::vector<double> grid{0.0, kPi / 8, kPi / 4, kPi / 2, kPi};
        for (int i = 0; i < 20; ++i) grid.push_back(angle(rng));
        const cd alpha(1.0, 0.5);
        const CoherentSpec<double> coh{alpha};
        const CatSpec<double> cat{2.0, -2.0, -1};
        const FockCutoff big(std::max(options.cutoff, required_cutoff(cd(2))));
        const auto coh_in = coherent_state(coh, Mode::A, big);
        const auto cat_in = cat_state(cat, Mode::A, big).state;
        double fid = 0, norm = 0;
        for (double t : grid) {
            const std::pair<TwoModeState, TwoModeState> pairs[] = {
                {apply_bs_analytic(fock_state(1, 0, small), P(t)), oracle_case1(P(t), small)},
                {apply_bs_analytic(coh_in, P(t)), oracle_case2(P(t), coh, big)},
                {mz(fock_state(1, 0, small), t, t), oracle_case4(P(t), P(t), small)},
                {mz(fock_state(2, 0, small), t, t), oracle_case5(P(t), P(t), small)},
                {mz(fock_state(1, 1, small), t, t), oracle_case6(P(t), P(t), small)},
                {mz(coh_in, t, t), oracle_case7(P(t), P(t), coh, big)},
                {mz(cat_in, t, t), oracle_case8(P(t), P(t), cat, big)},
            };
            for (const auto& [engine, oracle] : pairs) {
                fid = std::max(fid, 1 - fidelity(engine, oracle));
                norm = std::max(norm, std::abs(oracle.norm() - 1));
            }
        }
        suite.add("oracle.engine_grid", fid, 1e-10);
        suite.add("oracle.unit_norm", norm, 1e-12);
    }

    // Circuit and measurement invariants on random states.
    {
        double norm = 0, sum_rule = 0, entropy = 0, photons = 0;
        for (int i = 0; i < 20; ++i) {
            const auto s = random_state(cutoff, rng);
            const double t1 = angle(rng), t2 = angle(rng), phi = angle(rng);
            const auto out = mz(s, t1, t2, phi);
            norm = std::max(norm, std::abs(out.norm() - 1));
            photons = std::max(photons, std::abs(total_mean(mz(s, t1, t2)) - total_mean(s)));
            for (Mode m : {Mode::A, Mode::B}) {
                const auto p = detection_distribution(out, m);
                double total = 0;
                for (double x : p) total += x;
                sum_rule = std::max(sum_rule, std::abs(total - 1));
                const double before = schmidt_decompose(s).entropy_bits;
                entropy = std::max(entropy,
                                   std::abs(schmidt_decompose(apply(phase_matrix(phi, cutoff), m, s)).entropy_bits - before));
            }
        }
        suite.add("circuit.norm", norm, 1e-12);
        suite.add("circuit.photon_number", photons, 1e-12);
        suite.add("detection.sum_rule", sum_rule, 1e-12);
        suite.add("schmidt.local_phase_invariance", entropy, 1e-12);
    }
    {
        const FockCutoff c(std::max(options.cutoff, required_cutoff(cd(1.5))));
        const auto in = product_state(coherent_vector(CoherentSpec<double>{cd(0.8, 0.3)}, c),
                                      coherent_vector(CoherentSpec<double>{cd(-0.4, 0.6)}, c), c);
        double worst = 0;
        for (int i = 0; i < 5; ++i) {
            worst = std::max(worst, schmidt_decompose(apply_bs_analytic(in, P(angle(rng)))).entropy_bits);
        }
        suite.add("schmidt.coherent_products", worst, 1e-9);
    }

    report.seconds = std::chrono::duration<double>(clock::now() - started).count();
    return report;
}

}  // namespace fockoptics
