#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fockoptics/scenario.hpp"

namespace {

enum Exit { kOk = 0, kConfigError = 1, kVerificationFailed = 2, kNumericalError = 3 };

struct Output {
    std::optional<std::string> path;
    std::ofstream file;

    std::ostream& stream() {
        if (!path) return std::cout;
        if (!file.is_open()) {
            file.open(*path);
            if (!file) throw fockoptics::ConfigInvalid("out", "cannot write " + *path);
        }
        return file;
    }
};

}  // namespace

int main(int argc, char** argv) {
    using namespace fockoptics;

    CLI::App app{"Two-mode truncated Fock-space simulator for beam-splitter optics"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    ConfigOverrides flags;

    auto* run = app.add_subcommand("run", "Run a scenario, optionally as a theta sweep");
    run->add_option("--config", config_path, "JSON scenario file; flags override it");
    run->add_option("--case", flags.case_name, "case1, case2, case4..case8 or custom");
    run->add_option("--theta", flags.theta, "first splitter angle (radians)");
    run->add_option("--theta2", flags.theta2, "second splitter angle (radians); defaults to theta");
    run->add_option("--alpha-re", flags.alpha_re);
    run->add_option("--alpha-im", flags.alpha_im);
    run->add_option("--beta-re", flags.beta_re);
    run->add_option("--beta-im", flags.beta_im);
    run->add_option("--sign", flags.sign, "cat superposition sign, +1 or -1");
    run->add_option("--phi", flags.phi, "phase on mode a between the splitters (radians)");
    run->add_option("--cutoff", flags.cutoff, "per-mode photon cutoff n_max");
    run->add_option("--sweep", flags.sweep, "theta sweep start:stop:steps");
    run->add_option("--format", flags.format, "table, csv or jsonl");
    run->add_option("--out", out_path, "write output to a file instead of stdout");
    run->add_option("--seed", flags.seed, "recorded seed");

    VerificationOptions verify_options;
    std::string verify_format = "table";
    auto* verify = app.add_subcommand("verify", "Run every engine and closed-form cross-check");
    verify->add_option("--cutoff", verify_options.cutoff, "cutoff for the operator checks")->capture_default_str();
    verify->add_option("--seed", verify_options.seed, "seed for the random angles and states")->capture_default_str();
    verify->add_option("--format", verify_format, "table, csv or jsonl")->capture_default_str();
    verify->add_option("--out", out_path, "write output to a file instead of stdout");
    verify->add_flag("--flip-bs-sign", verify_options.flip_bs_sign, "test hook: reverse the splitter exponent sign")
        ->group("");

    auto* list = app.add_subcommand("list-cases", "List the built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    Output output{out_path, {}};
    try {
        if (*list) {
            for (const auto& c : case_catalog()) output.stream() << c.name << "  " << c.summary << "\n";
            return kOk;
        }
        if (*verify) {
            if (verify_options.cutoff < 1 || verify_options.cutoff > kMaxCutoff) {
                throw ConfigInvalid("cutoff", "must lie in [1, " + std::to_string(kMaxCutoff) + "]");
            }
            const OutputFormat format = parse_format(verify_format);
            const auto report = run_verification_suite(verify_options);
            write_verification(output.stream(), report, format);
            return report.all_passed() ? kOk : kVerificationFailed;
        }
        ScenarioConfig config = config_path ? load_config(*config_path) : ScenarioConfig{};
        apply_overrides(config, flags);
        const auto reports = run_scenarios(config);
        write_reports(output.stream(), config, reports);
        return kOk;
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const CutoffTooSmall& e) {
        std::cerr << "cutoff error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}
