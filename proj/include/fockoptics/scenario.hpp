#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fockoptics/metrics.hpp"

// Scenario runner behind the command-line tool. Everything here works in
// double precision; the templated core stays available for other scalars.

namespace fockoptics {

inline constexpr std::uint64_t kDefaultSeed = 20240917;
/// Amplitudes at or below this magnitude are left out of reports.
inline constexpr double kReportFloor = 1e-12;

enum class OutputFormat { Table, Csv, JsonLines };

struct SweepSpec {
    double start = 0;
    double stop = 0;
    int steps = 2;
};

struct CustomElement {
    enum class Kind { Splitter, Phase, Mirror };
    Kind kind = Kind::Mirror;
    double angle = 0;  // theta for a splitter, phi for a phase shifter
    Mode mode = Mode::A;
};

/// Input for the "custom" case: a Fock pair or a coherent state in mode a.
struct CustomInput {
    std::optional<std::pair<int, int>> fock;
    std::optional<std::complex<double>> coherent;
};

struct ScenarioConfig {
    std::string case_name = "case1";
    double theta = 0;
    /// Second splitter angle; follows theta when unset.
    std::optional<double> theta2;
    std::complex<double> alpha{1, 0};
    std::complex<double> beta{-1, 0};
    int sign = 1;
    /// Phase on mode a between the two splitters of a Mach-Zehnder case.
    std::optional<double> phi;
    /// Per-mode n_max; chosen from the input when unset.
    std::optional<int> cutoff;
    std::optional<SweepSpec> sweep;
    OutputFormat format = OutputFormat::Table;
    std::uint64_t seed = kDefaultSeed;
    CustomInput custom_input;
    std::vector<CustomElement> circuit;
};

/// Flag values; every set field replaces the corresponding config field.
struct ConfigOverrides {
    std::optional<std::string> case_name;
    std::optional<double> theta, theta2, alpha_re, alpha_im, beta_re, beta_im, phi;
    std::optional<int> sign, cutoff;
    std::optional<std::string> sweep, format;
    std::optional<std::uint64_t> seed;
};

struct CaseInfo {
    std::string name;
    std::string summary;
};

const std::vector<CaseInfo>& case_catalog();

ScenarioConfig parse_config_text(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
void apply_overrides(ScenarioConfig& config, const ConfigOverrides& overrides);
/// "start:stop:steps".
SweepSpec parse_sweep(const std::string& text);
OutputFormat parse_format(const std::string& text);
/// Throws ConfigInvalid naming the first offending field.
void validate(const ScenarioConfig& config);

struct AmplitudeEntry {
    int n;
    int m;
    std::complex<double> value;
};

struct ScenarioReport {
    std::string case_name;
    std::string input;
    double theta = 0;
    double theta2 = 0;
    std::optional<double> phi;
    int n_max = 0;
    std::vector<AmplitudeEntry> amplitudes;
    std::vector<double> distribution_a;
    std::vector<double> distribution_b;
    PhotonStats<double> stats_a;
    PhotonStats<double> stats_b;
    double entropy_bits = 0;
    /// Present when the case has a closed-form output and no phase is inserted.
    std::optional<double> oracle_fidelity;
    TwoModeState state{FockCutoff(1)};
};

/// Runs the configuration at its theta; ignores any sweep.
ScenarioReport run_scenario(const ScenarioConfig& config);
/// One report per sweep point in sweep order, or a single report without a sweep.
std::vector<ScenarioReport> run_scenarios(const ScenarioConfig& config);

std::string format_number(double x);
void write_reports(std::ostream& out, const ScenarioConfig& config, const std::vector<ScenarioReport>& reports);

struct SweepRow {
    double theta, theta2, p_a1, p_b1, mean_a, mean_b, entropy_bits;
    std::optional<double> oracle_fidelity;
};
SweepRow sweep_row(const ScenarioReport& report);
inline constexpr const char* kSweepCsvHeader = "theta,theta2,P_a1,P_b1,mean_a,mean_b,entropy_bits,oracle_fidelity";
/// Parses a sweep CSV written by write_reports.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct VerificationOptions {
    std::uint64_t seed = kDefaultSeed;
    int cutoff = 12;
    /// Test hook: runs the numeric splitter with the opposite exponent sign.
    bool flip_bs_sign = false;
};

struct CheckResult {
    std::string name;
    double deviation;
    double tolerance;
    bool pass;
};

struct VerificationReport {
    std::uint64_t seed = kDefaultSeed;
    int cutoff = 12;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

VerificationReport run_verification_suite(const VerificationOptions& options = {});
void write_verification(std::ostream& out, const VerificationReport& report, OutputFormat format);

}  // namespace fockoptics
