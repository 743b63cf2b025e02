// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Usage: acceptance <path to fockoptics executable>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fockoptics/scenario.hpp"

namespace {

using fockoptics::CheckResult;
using fockoptics::VerificationReport;

struct Criterion {
    const char* id;
    const char* description;
    std::vector<std::string> prefixes;
};

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <fockoptics executable>\n", argv[0]);
        return 2;
    }
    const VerificationReport report = fockoptics::run_verification_suite();

    const std::vector<Criterion> criteria{
        {"AC1", "single-photon splitter amplitudes T, iR over 50 random angles, under 1 s", {"single_photon."}},
        {"AC2", "Heisenberg images of both creation operators on interior blocks, cutoff 12", {"heisenberg."}},
        {"AC3", "commutator series converges below 1e-8 at order 20", {"bch."}},
        {"AC4", "coherent splitting into |T alpha>|iR alpha>, photon number conserved", {"coherent_split."}},
        {"AC5", "Mach-Zehnder single photon: cos^2(2 theta), null at pi/4, one bit at pi/8", {"mz_single_photon."}},
        {"AC6", "two-photon Mach-Zehnder formulas, random pairs and special angles", {"two_photon_"}},
        {"AC7", "heralded |2> and ladder success bounded by 2^-n", {"herald.", "ladder."}},
        {"AC8", "cat state through a Mach-Zehnder matches the closed form", {"cat_mz."}},
        {"AC9", "analytic and numeric splitter routes agree on 200 random states", {"cross_method."}},
        {"AC10", "Bose-Einstein p0 = 1/2, p1 = 1/4, mean within the tail", {"thermal.p0", "thermal.p1", "thermal.mean"}},
        {"AC11", "phase pi between balanced splitters lifts the null above 0.99", {"phase_scenario."}},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        bool pass = true;
        std::size_t matched = 0;
        const CheckResult* worst = nullptr;
        for (const auto& check : report.checks) {
            bool hit = false;
            for (const auto& p : c.prefixes) hit = hit || starts_with(check.name, p);
            if (!hit) continue;
            ++matched;
            pass = pass && check.pass;
            if (!worst || (!check.pass && worst->pass) ||
                (check.pass == worst->pass && check.deviation / (check.tolerance > 0 ? check.tolerance : 1) >
                                                  worst->deviation / (worst->tolerance > 0 ? worst->tolerance : 1))) {
                worst = &check;
            }
        }
        pass = pass && matched > 0;
        failures += pass ? 0 : 1;
        std::printf("[%s] %-5s %s (%zu checks", pass ? "PASS" : "FAIL", c.id, c.description, matched);
        if (worst) std::printf("; worst %s = %.3g, tol %.3g", worst->name.c_str(), worst->deviation, worst->tolerance);
        std::printf(")\n");
    }

    // The full suite through the command-line tool, timed end to end.
    const std::string command = std::string("\"") + argv[1] + "\" verify --format csv > /dev/null";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(command.c_str());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = status == 0 && seconds <= 60.0;
    failures += ok ? 0 : 1;
    std::printf("[%s] %-5s full verify suite exits 0 within 60 s (exit %d, %.2f s)\n", ok ? "PASS" : "FAIL", "AC12",
                status, seconds);

    std::printf("%d of %zu criteria failed\n", failures, criteria.size() + 1);
    return failures == 0 ? 0 : 1;
}
