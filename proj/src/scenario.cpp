#include "fockoptics/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fockoptics/interferometer.hpp"
#include "fockoptics/oracle.hpp"

namespace fockoptics {

namespace {

using json = nlohmann::json;
using P = SplitterParams<double>;

const std::vector<std::string> kTopLevelKeys{"case", "angles", "input", "circuit", "cutoff", "sweep", "output", "seed"};

[[noreturn]] void invalid(const std::string& field, const std::string& what) { throw ConfigInvalid(field, what); }

void reject_unknown(const json& object, const std::vector<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            invalid(prefix + key, "unknown key");
        }
    }
}

template <typename T>
T read(const json& object, const std::string& key, const std::string& field) {
    try {
        return object.at(key).get<T>();
    } catch (const json::exception& e) {
        invalid(field, e.what());
    }
}

const json& section(const json& root, const std::string& key) {
    const json& s = root.at(key);
    if (!s.is_object()) invalid(key, "expected an object");
    return s;
}

std::complex<double> read_complex(const json& object, const std::string& field) {
    if (!object.is_object()) invalid(field, "expected {\"re\": x, \"im\": y}");
    reject_unknown(object, {"re", "im"}, field + ".");
    const double re = object.contains("re") ? read<double>(object, "re", field + ".re") : 0.0;
    const double im = object.contains("im") ? read<double>(object, "im", field + ".im") : 0.0;
    return {re, im};
}

Mode read_mode(const std::string& text, const std::string& field) {
    if (text == "a") return Mode::A;
    if (text == "b") return Mode::B;
    invalid(field, "mode must be \"a\" or \"b\"");
}

bool is_mz_case(const std::string& name) {
    return name == "case4" || name == "case5" || name == "case6" || name == "case7" || name == "case8";
}

bool uses_alpha(const std::string& name) { return name == "case2" || name == "case7" || name == "case8"; }

double max_alpha_norm(const ScenarioConfig& c) {
    double a = std::abs(c.alpha);
    if (c.case_name == "case8") a = std::max(a, std::abs(c.beta));
    return a;
}

std::string describe_complex(std::complex<double> z) {
    return "(" + format_number(z.real()) + ", " + format_number(z.imag()) + ")";
}

/// Smallest n_max that holds the case input; CutoffTooSmall if the cap is not enough.
int auto_cutoff(const ScenarioConfig& c) {
    if (c.case_name == "custom") {
        int need = 1;
        if (c.custom_input.fock) need = std::max({1, c.custom_input.fock->first, c.custom_input.fock->second});
        if (c.custom_input.coherent) need = required_cutoff(*c.custom_input.coherent);
        return need;
    }
    if (uses_alpha(c.case_name)) return std::max(1, required_cutoff(std::complex<double>(max_alpha_norm(c))));
    if (c.case_name == "case5" || c.case_name == "case6") return 2;
    return 1;
}

FockCutoff resolve_cutoff(const ScenarioConfig& c) {
    const int automatic = auto_cutoff(c);
    if (automatic > kMaxCutoff) throw CutoffTooSmall("input needs more than the maximum cutoff", automatic);
    if (!c.cutoff) return FockCutoff(automatic);
    const FockCutoff chosen(*c.cutoff);
    if (!uses_alpha(c.case_name) && !(c.case_name == "custom" && c.custom_input.coherent) && *c.cutoff < automatic) {
        throw CutoffTooSmall("input photon number exceeds the cutoff", automatic);
    }
    return chosen;
}

struct Prepared {
    TwoModeState input;
    std::string description;
    Circuit<double> circuit;
    std::optional<TwoModeState> oracle;
};

Prepared prepare(const ScenarioConfig& c, double theta, double theta2) {
    const FockCutoff cutoff = resolve_cutoff(c);
    const P p1(theta), p2(theta2);
    const CoherentSpec<double> coherent{c.alpha};
    const std::string& name = c.case_name;
    std::optional<PhaseShift<double>> shift;
    if (c.phi) shift = PhaseShift<double>{Mode::A, *c.phi};
    const Circuit<double> single{cutoff, {Splitter<double>{p1}}};
    const Circuit<double> mz = mach_zehnder(p1, p2, cutoff, shift);
    const bool phased = c.phi.has_value();

    if (name == "case1") return {fock_state(1, 0, cutoff), "|1,0>", single, oracle_case1(p1, cutoff)};
    if (name == "case2") {
        return {coherent_state(coherent, Mode::A, cutoff), "|alpha=" + describe_complex(c.alpha) + ">_a |0>_b", single,
                oracle_case2(p1, coherent, cutoff)};
    }
    const auto maybe = [&](TwoModeState s) { return phased ? std::nullopt : std::optional<TwoModeState>(std::move(s)); };
    if (name == "case4") return {fock_state(1, 0, cutoff), "|1,0>", mz, maybe(oracle_case4(p1, p2, cutoff))};
    if (name == "case5") return {fock_state(2, 0, cutoff), "|2,0>", mz, maybe(oracle_case5(p1, p2, cutoff))};
    if (name == "case6") return {fock_state(1, 1, cutoff), "|1,1>", mz, maybe(oracle_case6(p1, p2, cutoff))};
    if (name == "case7") {
        return {coherent_state(coherent, Mode::A, cutoff), "|alpha=" + describe_complex(c.alpha) + ">_a |0>_b", mz,
                maybe(oracle_case7(p1, p2, coherent, cutoff))};
    }
    if (name == "case8") {
        const CatSpec<double> cat{c.alpha, c.beta, c.sign};
        std::string desc = "eta(|" + describe_complex(c.alpha) + "> " + (c.sign > 0 ? "+" : "-") + " |" +
                           describe_complex(c.beta) + ">)_a |0>_b";
        return {cat_state(cat, Mode::A, cutoff).state, desc, mz, maybe(oracle_case8(p1, p2, cat, cutoff))};
    }
    // custom
    Circuit<double> circuit{cutoff, {}};
    for (const CustomElement& e : c.circuit) {
        switch (e.kind) {
            case CustomElement::Kind::Splitter: circuit.elements.push_back(Splitter<double>{P(e.angle)}); break;
            case CustomElement::Kind::Phase: circuit.elements.push_back(PhaseShift<double>{e.mode, e.angle}); break;
            case CustomElement::Kind::Mirror: circuit.elements.push_back(Mirror{}); break;
        }
    }
    if (c.custom_input.coherent) {
        const CoherentSpec<double> spec{*c.custom_input.coherent};
        return {coherent_state(spec, Mode::A, cutoff),
                "|alpha=" + describe_complex(spec.alpha) + ">_a |0>_b", circuit, std::nullopt};
    }
    const auto [n, m] = *c.custom_input.fock;
    return {fock_state(n, m, cutoff), "|" + std::to_string(n) + "," + std::to_string(m) + ">", circuit, std::nullopt};
}

ScenarioReport run_at(const ScenarioConfig& c, double theta, double theta2) {
    const Prepared prepared = prepare(c, theta, theta2);
    ScenarioReport r;
    r.case_name = c.case_name;
    r.input = prepared.description;
    r.theta = theta;
    r.theta2 = theta2;
    r.phi = c.phi;
    r.state = run_circuit(prepared.input, prepared.circuit);
    r.n_max = r.state.cutoff().n_max();
    for (int n = 0; n <= r.n_max; ++n) {
        for (int m = 0; m <= r.n_max; ++m) {
            if (std::abs(r.state(n, m)) > kReportFloor) r.amplitudes.push_back({n, m, r.state(n, m)});
        }
    }
    r.distribution_a = detection_distribution(r.state, Mode::A);
    r.distribution_b = detection_distribution(r.state, Mode::B);
    r.stats_a = photon_stats(r.state, Mode::A);
    r.stats_b = photon_stats(r.state, Mode::B);
    r.entropy_bits = schmidt_decompose(r.state).entropy_bits;
    if (prepared.oracle) r.oracle_fidelity = fidelity(r.state, *prepared.oracle);
    return r;
}

}  // namespace

const std::vector<CaseInfo>& case_catalog() {
    static const std::vector<CaseInfo> cases{
        {"case1", "|1,0> through one splitter"},
        {"case2", "coherent |alpha,0> through one splitter"},
        {"case4", "|1,0> through a Mach-Zehnder"},
        {"case5", "|2,0> through a Mach-Zehnder"},
        {"case6", "|1,1> through a Mach-Zehnder"},
        {"case7", "coherent |alpha,0> through a Mach-Zehnder"},
        {"case8", "cat state eta(|alpha> +- |beta>) in mode a through a Mach-Zehnder"},
        {"custom", "user-defined input and circuit"},
    };
    return cases;
}

SweepSpec parse_sweep(const std::string& text) {
    std::stringstream ss(text);
    std::string parts[3];
    for (auto& part : parts) {
        if (!std::getline(ss, part, ':')) invalid("sweep", "expected start:stop:steps, got \"" + text + "\"");
    }
    std::string rest;
    if (std::getline(ss, rest)) invalid("sweep", "expected start:stop:steps, got \"" + text + "\"");
    SweepSpec s;
    try {
        std::size_t used = 0;
        s.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        s.stop = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("stop");
        s.steps = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("steps");
    } catch (const std::logic_error&) {
        invalid("sweep", "expected start:stop:steps, got \"" + text + "\"");
    }
    return s;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "table") return OutputFormat::Table;
    if (text == "csv") return OutputFormat::Csv;
    if (text == "jsonl" || text == "json-lines") return OutputFormat::JsonLines;
    invalid("format", "expected table, csv or jsonl, got \"" + text + "\"");
}

ScenarioConfig parse_config_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        invalid("config", e.what());
    }
    if (!root.is_object()) invalid("config", "expected a JSON object");
    reject_unknown(root, kTopLevelKeys, "");

    ScenarioConfig c;
    if (root.contains("case")) c.case_name = read<std::string>(root, "case", "case");
    if (root.contains("angles")) {
        const json& a = section(root, "angles");
        reject_unknown(a, {"theta", "theta2", "phi"}, "angles.");
        if (a.contains("theta")) c.theta = read<double>(a, "theta", "theta");
        if (a.contains("theta2")) c.theta2 = read<double>(a, "theta2", "theta2");
        if (a.contains("phi")) c.phi = read<double>(a, "phi", "phi");
    }
    if (root.contains("input")) {
        const json& in = section(root, "input");
        reject_unknown(in, {"alpha", "beta", "sign", "fock"}, "input.");
        if (in.contains("alpha")) c.alpha = read_complex(in.at("alpha"), "alpha");
        if (in.contains("beta")) c.beta = read_complex(in.at("beta"), "beta");
        if (in.contains("sign")) c.sign = read<int>(in, "sign", "sign");
        if (in.contains("fock")) {
            const auto pair = read<std::vector<int>>(in, "fock", "input.fock");
            if (pair.size() != 2) invalid("input.fock", "expected [n, m]");
            c.custom_input.fock = std::pair{pair[0], pair[1]};
        } else if (in.contains("alpha")) {
            c.custom_input.coherent = c.alpha;
        }
    }
    if (root.contains("circuit")) {
        const json& list = root.at("circuit");
        if (!list.is_array()) invalid("circuit", "expected a list of elements");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string field = "circuit[" + std::to_string(i) + "]";
            const json& e = list[i];
            if (!e.is_object()) invalid(field, "expected an object");
            const auto type = read<std::string>(e, "type", field + ".type");
            CustomElement el;
            if (type == "splitter") {
                reject_unknown(e, {"type", "theta"}, field + ".");
                el.kind = CustomElement::Kind::Splitter;
                el.angle = read<double>(e, "theta", field + ".theta");
            } else if (type == "phase") {
                reject_unknown(e, {"type", "phi", "mode"}, field + ".");
                el.kind = CustomElement::Kind::Phase;
                el.angle = read<double>(e, "phi", field + ".phi");
                el.mode = read_mode(e.contains("mode") ? read<std::string>(e, "mode", field + ".mode") : "a",
                                    field + ".mode");
            } else if (type == "mirror") {
                reject_unknown(e, {"type"}, field + ".");
            } else {
                invalid(field + ".type", "expected splitter, phase or mirror, got \"" + type + "\"");
            }
            c.circuit.push_back(el);
        }
    }
    if (root.contains("cutoff")) c.cutoff = read<int>(root, "cutoff", "cutoff");
    if (root.contains("sweep")) {
        const json& s = section(root, "sweep");
        reject_unknown(s, {"start", "stop", "steps"}, "sweep.");
        c.sweep = SweepSpec{read<double>(s, "start", "sweep.start"), read<double>(s, "stop", "sweep.stop"),
                            read<int>(s, "steps", "sweep.steps")};
    }
    if (root.contains("output")) {
        const json& o = section(root, "output");
        reject_unknown(o, {"format"}, "output.");
        if (o.contains("format")) c.format = parse_format(read<std::string>(o, "format", "format"));
    }
    if (root.contains("seed")) c.seed = read<std::uint64_t>(root, "seed", "seed");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) invalid("config", "cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_overrides(ScenarioConfig& c, const ConfigOverrides& o) {
    if (o.case_name) c.case_name = *o.case_name;
    if (o.theta) c.theta = *o.theta;
    if (o.theta2) c.theta2 = *o.theta2;
    if (o.alpha_re) c.alpha.real(*o.alpha_re);
    if (o.alpha_im) c.alpha.imag(*o.alpha_im);
    if (o.beta_re) c.beta.real(*o.beta_re);
    if (o.beta_im) c.beta.imag(*o.beta_im);
    if (o.alpha_re || o.alpha_im) {
        if (c.custom_input.coherent) c.custom_input.coherent = c.alpha;
    }
    if (o.phi) c.phi = *o.phi;
    if (o.sign) c.sign = *o.sign;
    if (o.cutoff) c.cutoff = *o.cutoff;
    if (o.sweep) c.sweep = parse_sweep(*o.sweep);
    if (o.format) c.format = parse_format(*o.format);
    if (o.seed) c.seed = *o.seed;
}

void validate(const ScenarioConfig& c) {
    const auto& cases = case_catalog();
    if (std::none_of(cases.begin(), cases.end(), [&](const CaseInfo& i) { return i.name == c.case_name; })) {
        invalid("case", "unknown case \"" + c.case_name + "\" (see list-cases)");
    }
    if (!std::isfinite(c.theta)) invalid("theta", "must be finite");
    if (c.theta2 && !std::isfinite(*c.theta2)) invalid("theta2", "must be finite");
    if (c.phi && !std::isfinite(*c.phi)) invalid("phi", "must be finite");
    if (c.phi && !is_mz_case(c.case_name)) invalid("phi", "a phase shifter needs a Mach-Zehnder case");
    if (!std::isfinite(c.alpha.real()) || !std::isfinite(c.alpha.imag())) invalid("alpha", "must be finite");
    if (!std::isfinite(c.beta.real()) || !std::isfinite(c.beta.imag())) invalid("beta", "must be finite");
    if (c.sign != 1 && c.sign != -1) invalid("sign", "must be +1 or -1");
    if (c.cutoff && (*c.cutoff < 1 || *c.cutoff > kMaxCutoff)) {
        invalid("cutoff", "must lie in [1, " + std::to_string(kMaxCutoff) + "]");
    }
    if (c.sweep) {
        if (c.sweep->steps < 2) invalid("sweep.steps", "must be at least 2");
        if (!std::isfinite(c.sweep->start)) invalid("sweep.start", "must be finite");
        if (!std::isfinite(c.sweep->stop)) invalid("sweep.stop", "must be finite");
    }
    if (c.case_name == "case8" && c.sign == -1 && c.alpha == c.beta) {
        invalid("beta", "alpha == beta with sign -1 gives the zero vector");
    }
    if (c.case_name == "custom") {
        if (c.circuit.empty()) invalid("circuit", "custom case needs at least one element");
        if (c.custom_input.fock.has_value() == c.custom_input.coherent.has_value()) {
            invalid("input", "custom case needs exactly one of input.fock or input.alpha");
        }
        if (c.custom_input.fock && (c.custom_input.fock->first < 0 || c.custom_input.fock->second < 0)) {
            invalid("input.fock", "photon numbers must be non-negative");
        }
        for (std::size_t i = 0; i < c.circuit.size(); ++i) {
            if (!std::isfinite(c.circuit[i].angle)) invalid("circuit[" + std::to_string(i) + "]", "angle must be finite");
        }
    }
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
    validate(config);
    return run_at(config, config.theta, config.theta2.value_or(config.theta));
}

std::vector<ScenarioReport> run_scenarios(const ScenarioConfig& config) {
    validate(config);
    if (!config.sweep) return {run_at(config, config.theta, config.theta2.value_or(config.theta))};
    const SweepSpec& s = *config.sweep;
    std::vector<ScenarioReport> out;
    out.reserve(s.steps);
    for (int i = 0; i < s.steps; ++i) {
        const double theta = s.start + (s.stop - s.start) * i / (s.steps - 1);
        out.push_back(run_at(config, theta, config.theta2.value_or(theta)));
    }
    return out;
}

}  // namespace fockoptics
