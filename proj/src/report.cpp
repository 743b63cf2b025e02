#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fockoptics/scenario.hpp"

namespace fockoptics {

namespace {

using json = nlohmann::json;

std::string fixed(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json stats_json(const PhotonStats<double>& s) {
    return {{"mean", s.mean}, {"variance", s.variance}, {"mandel_q", s.mandel_q}, {"vacuum", s.vacuum}};
}

json report_json(const ScenarioReport& r) {
    json amps = json::array();
    for (const auto& a : r.amplitudes) amps.push_back({{"n", a.n}, {"m", a.m}, {"re", a.value.real()}, {"im", a.value.imag()}});
    return {{"case", r.case_name},
            {"input", r.input},
            {"theta", r.theta},
            {"theta2", r.theta2},
            {"phi", optional_json(r.phi)},
            {"n_max", r.n_max},
            {"amplitudes", amps},
            {"distribution_a", r.distribution_a},
            {"distribution_b", r.distribution_b},
            {"stats_a", stats_json(r.stats_a)},
            {"stats_b", stats_json(r.stats_b)},
            {"entropy_bits", r.entropy_bits},
            {"oracle_fidelity", optional_json(r.oracle_fidelity)}};
}

json row_json(const SweepRow& row) {
    return {{"theta", row.theta},   {"theta2", row.theta2}, {"P_a1", row.p_a1},
            {"P_b1", row.p_b1},     {"mean_a", row.mean_a}, {"mean_b", row.mean_b},
            {"entropy_bits", row.entropy_bits}, {"oracle_fidelity", optional_json(row.oracle_fidelity)}};
}

void write_table(std::ostream& out, const ScenarioReport& r) {
    out << "case             " << r.case_name << "\n"
        << "input            " << r.input << "\n"
        << "theta            " << fixed(r.theta, 17) << "\n"
        << "theta2           " << fixed(r.theta2, 17) << "\n"
        << "phi              " << (r.phi ? fixed(*r.phi, 17) : "none") << "\n"
        << "n_max            " << r.n_max << "\n"
        << "amplitudes\n";
    for (const auto& a : r.amplitudes) {
        out << "  |" << a.n << "," << a.m << ">  " << fixed(a.value.real()) << (a.value.imag() < 0 ? " - " : " + ")
            << fixed(std::abs(a.value.imag())) << "i\n";
    }
    const auto distribution = [&](const char* label, const std::vector<double>& p) {
        out << label << "\n";
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] > kReportFloor) out << "  " << k << "  " << fixed(p[k]) << "\n";
        }
    };
    distribution("P(mode a = k)", r.distribution_a);
    distribution("P(mode b = k)", r.distribution_b);
    const auto stats = [&](const char* label, const PhotonStats<double>& s) {
        out << label << "mean " << fixed(s.mean) << "  variance " << fixed(s.variance) << "  mandel_q "
            << (s.vacuum ? std::string("n/a") : fixed(s.mandel_q)) << "\n";
    };
    stats("mode a           ", r.stats_a);
    stats("mode b           ", r.stats_b);
    out << "entropy_bits     " << fixed(r.entropy_bits) << "\n"
        << "oracle_fidelity  " << (r.oracle_fidelity ? fixed(*r.oracle_fidelity, 17) : "n/a") << "\n";
}

void write_long_csv(std::ostream& out, const ScenarioReport& r) {
    out << "record,n,m,re,im,value\n";
    const auto scalar = [&](const std::string& name, double v) { out << name << ",,,,," << format_number(v) << "\n"; };
    scalar("theta", r.theta);
    scalar("theta2", r.theta2);
    if (r.phi) scalar("phi", *r.phi);
    scalar("n_max", r.n_max);
    for (const auto& a : r.amplitudes) {
        out << "amplitude," << a.n << "," << a.m << "," << format_number(a.value.real()) << ","
            << format_number(a.value.imag()) << ",\n";
    }
    for (std::size_t k = 0; k < r.distribution_a.size(); ++k) {
        out << "P_a," << k << ",,,," << format_number(r.distribution_a[k]) << "\n";
    }
    for (std::size_t k = 0; k < r.distribution_b.size(); ++k) {
        out << "P_b,," << k << ",,," << format_number(r.distribution_b[k]) << "\n";
    }
    scalar("mean_a", r.stats_a.mean);
    scalar("variance_a", r.stats_a.variance);
    scalar("mandel_q_a", r.stats_a.mandel_q);
    scalar("mean_b", r.stats_b.mean);
    scalar("variance_b", r.stats_b.variance);
    scalar("mandel_q_b", r.stats_b.mandel_q);
    scalar("entropy_bits", r.entropy_bits);
    if (r.oracle_fidelity) scalar("oracle_fidelity", *r.oracle_fidelity);
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

SweepRow sweep_row(const ScenarioReport& r) {
    const auto at1 = [](const std::vector<double>& p) { return p.size() > 1 ? p[1] : 0.0; };
    return {r.theta,         r.theta2,         at1(r.distribution_a), at1(r.distribution_b),
            r.stats_a.mean,  r.stats_b.mean,   r.entropy_bits,        r.oracle_fidelity};
}

void write_reports(std::ostream& out, const ScenarioConfig& config, const std::vector<ScenarioReport>& reports) {
    if (!config.sweep) {
        for (const auto& r : reports) {
            switch (config.format) {
                case OutputFormat::Table: write_table(out, r); break;
                case OutputFormat::Csv: write_long_csv(out, r); break;
                case OutputFormat::JsonLines: out << report_json(r).dump() << "\n"; break;
            }
        }
        return;
    }
    switch (config.format) {
        case OutputFormat::Table: {
            char line[256];
            std::snprintf(line, sizeof line, "%-14s %-14s %-14s %-14s %-14s %-14s %-14s %s\n", "theta", "theta2",
                          "P_a1", "P_b1", "mean_a", "mean_b", "entropy_bits", "oracle_fidelity");
            out << line;
            for (const auto& r : reports) {
                const SweepRow row = sweep_row(r);
                std::snprintf(line, sizeof line, "%-14.8g %-14.8g %-14.8g %-14.8g %-14.8g %-14.8g %-14.8g %s\n",
                              row.theta, row.theta2, row.p_a1, row.p_b1, row.mean_a, row.mean_b, row.entropy_bits,
                              row.oracle_fidelity ? fixed(*row.oracle_fidelity, 14).c_str() : "n/a");
                out << line;
            }
            break;
        }
        case OutputFormat::Csv:
            out << kSweepCsvHeader << "\n";
            for (const auto& r : reports) {
                const SweepRow row = sweep_row(r);
                out << format_number(row.theta) << "," << format_number(row.theta2) << "," << format_number(row.p_a1)
                    << "," << format_number(row.p_b1) << "," << format_number(row.mean_a) << ","
                    << format_number(row.mean_b) << "," << format_number(row.entropy_bits) << ","
                    << optional_number(row.oracle_fidelity) << "\n";
            }
            break;
        case OutputFormat::JsonLines:
            for (const auto& r : reports) out << row_json(sweep_row(r)).dump() << "\n";
            break;
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSweepCsvHeader) throw std::runtime_error("not a sweep CSV");
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() == 7) cells.emplace_back();
        if (cells.size() != 8) throw std::runtime_error("malformed sweep row: " + line);
        SweepRow row{std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]),
                     std::stod(cells[4]), std::stod(cells[5]), std::stod(cells[6]), std::nullopt};
        if (!cells[7].empty()) row.oracle_fidelity = std::stod(cells[7]);
        rows.push_back(row);
    }
    return rows;
}

void write_verification(std::ostream& out, const VerificationReport& report, OutputFormat format) {
    std::size_t failed = 0;
    for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
    switch (format) {
        case OutputFormat::Table: {
            out << "seed " << report.seed << "  cutoff " << report.cutoff << "\n";
            char line[256];
            for (const auto& c : report.checks) {
                std::snprintf(line, sizeof line, "%-4s %-48s deviation %-12.4g tolerance %.1g\n", c.pass ? "PASS" : "FAIL",
                              c.name.c_str(), c.deviation, c.tolerance);
                out << line;
            }
            out << report.checks.size() - failed << "/" << report.checks.size() << " checks passed in "
                << fixed(report.seconds, 3) << " s\n";
            break;
        }
        case OutputFormat::Csv:
            out << "# seed=" << report.seed << " cutoff=" << report.cutoff << "\n";
            out << "check,deviation,tolerance,verdict\n";
            for (const auto& c : report.checks) {
                out << c.name << "," << format_number(c.deviation) << "," << format_number(c.tolerance) << ","
                    << (c.pass ? "pass" : "fail") << "\n";
            }
            break;
        case OutputFormat::JsonLines:
            out << json{{"seed", report.seed}, {"cutoff", report.cutoff}}.dump() << "\n";
            for (const auto& c : report.checks) {
                out << json{{"check", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance},
                            {"verdict", c.pass ? "pass" : "fail"}}
                           .dump()
                    << "\n";
            }
            out << json{{"passed", report.checks.size() - failed}, {"failed", failed}, {"seconds", report.seconds}}.dump()
                << "\n";
            break;
    }
}

}  // namespace fockoptics
