#include "benford/audit.hpp"
#include "benford/cli.hpp"
#include "benford/errors.hpp"
#include "benford/metrics.hpp"
#include "benford/report_json.hpp"
#include "benford/spread.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace benford::cli {

namespace {

constexpr double kPrintedBound = 0.1334;

struct RunConfig {
    int base = 10;
    std::uint64_t seed = 0;
    std::size_t samples = 1'000'000;
    double alpha = 0.25;
    std::size_t grid = 4096;
    std::string format = "json";
    std::string output;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error in a JSON input file, tagged with the offending JSON path.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The artifact goes to --output when given, else to stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : to_file_(!path.empty()), fallback_(fallback) {
        if (to_file_) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError("cannot open output file '" + path + "' for writing");
        }
    }
    std::ostream& stream() { return to_file_ ? static_cast<std::ostream&>(file_) : fallback_; }
    [[nodiscard]] bool to_file() const noexcept { return to_file_; }
    void close() {
        if (!to_file_) return;
        file_.close();
        if (!file_) throw IoError("failed writing output file");
    }

private:
    bool to_file_;
    std::ofstream file_;
    std::ostream& fallback_;
};

std::string csv(std::initializer_list<std::string> cells) {
    std::string line;
    for (const auto& c : cells) {
        if (!line.empty()) line += ',';
        line += c;
    }
    return line + '\n';
}

std::string num(double v) { return format_double(v); }

std::vector<Base> parse_bases(const std::string& list) {
    std::vector<Base> bases;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            bases.emplace_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw ConfigError("invalid base '" + item + "' in --bases");
        }
    }
    if (bases.empty()) throw ConfigError("--bases needs at least one base");
    return bases;
}

std::vector<int> parse_ints(const std::string& list, const char* flag) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::logic_error&) {
            throw ConfigError(std::string("invalid integer '") + item + "' in " + flag);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// audit

void audit_prop1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Base base(cfg.base);
    const auto curve = prop1_curve(base, cfg.grid);
    double grid_min = curve.distances.front();
    for (double d : curve.distances) grid_min = std::min(grid_min, d);

    Json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["base"] = cfg.base;
    summary["grid_size"] = cfg.grid;
    summary["bound"] = curve.bound.value;
    summary["bound_source"] = curve.bound.closed_form ? "closed_form" : "numerical_minimum";
    summary["theta_star"] = curve.theta_star;
    summary["d_star"] = curve.d_star;
    summary["residual"] = std::abs(curve.d_star - curve.bound.value);
    summary["grid_min"] = grid_min;
    if (curve.bound.closed_form) {
        summary["printed_decimal"] = kPrintedBound;
        summary["printed_decimal_gap"] = curve.bound.value - kPrintedBound;
    }

    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"theta", "D"});
        for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
            sink.stream() << csv({num(curve.thetas[i]), num(curve.distances[i])});
        }
        (sink.to_file() ? out : err) << summary.dump() << '\n';
    } else {
        Json j = summary;
        j["curve"] = Json::array();
        for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
            j["curve"].push_back({{"theta", curve.thetas[i]}, {"D", curve.distances[i]}});
        }
        sink.stream() << j.dump(2) << '\n';
        if (sink.to_file()) out << summary.dump() << '\n';
    }
    sink.close();
}

void audit_counterexamples(const RunConfig& cfg, unsigned n, std::ostream& out) {
    const Base base(cfg.base);
    const unsigned top = std::max(n, 12U);
    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"n", "numerator", "denominator", "fraction"});
        for (unsigned k = 0; k <= top; ++k) {
            const auto f = leading_one_fraction(k, base);
            sink.stream() << csv({std::to_string(k), numerator(f).str(), denominator(f).str(),
                                  num(f.convert_to<double>())});
        }
        sink.close();
        return;
    }

    const auto requested = leading_one_fraction(n, base);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["base"] = cfg.base;
    j["leading_one"] = {{"n", n},
                        {"population", "uniform on {1, ..., 2*" + std::to_string(cfg.base) + "^" + std::to_string(n) + "}"},
                        {"numerator", numerator(requested).str()},
                        {"denominator", denominator(requested).str()},
                        {"fraction", requested.convert_to<double>()},
                        {"benford_first_digit_1", benford_first_digit_pmf(1, base)}};
    j["leading_one_table"] = Json::array();
    for (unsigned k = 0; k <= top; ++k) {
        const auto f = leading_one_fraction(k, base);
        j["leading_one_table"].push_back({{"n", k}, {"fraction", f.convert_to<double>()}});
    }

    // Uniform(0, T) along T = b^(m + theta*): raw spread grows without bound,
    // the mantissa distance stays at the sharp lower bound.
    const auto minimum = minimize_over_phase(base, cfg.grid);
    j["uniform_sequence"] = Json::array();
    for (int m = 0; m <= 8; m += 2) {
        const double upper = std::pow(static_cast<double>(cfg.base), m + minimum.theta_star);
        const AnalyticDistribution dist(UniformContinuous{upper});
        const auto spread = spread_analytic(dist, Scale::raw, cfg.alpha, base);
        j["uniform_sequence"].push_back({{"T", upper},
                                         {"range", spread.range.value},
                                         {"std_dev", spread.std_dev.value},
                                         {"ks", uniform_upper_distance(upper, base)}});
    }
    sink.stream() << j.dump(2) << '\n';
    sink.close();
}

void audit_nonmonotonicity(const RunConfig& cfg, std::ostream& out) {
    const auto report = nonmonotonicity_report(Base(cfg.base));
    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"measure", "scale", "X_value", "Z_value", "ks_X", "ks_Z"});
        for (const auto& r : report.rows) {
            sink.stream() << csv({r.measure, std::string(to_string(r.scale)), num(r.x_value), num(r.z_value),
                                  num(report.x_distance.ks), num(report.z_distance.ks)});
        }
    } else {
        sink.stream() << to_json(report).dump(2) << '\n';
    }
    sink.close();
}

void audit_basechange(const RunConfig& cfg, const std::string& bases_arg, double exponent, int dist_base,
                      std::ostream& out) {
    const auto bases = parse_bases(bases_arg);
    const AnalyticDistribution dist(PowerOfUniform{exponent, Base(dist_base)});
    const auto entries = base_change_audit(dist, bases);
    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"base", "ks", "ks_argmax", "wasserstein", "log_range", "log_range_ratio"});
        for (const auto& e : entries) {
            sink.stream() << csv({std::to_string(e.base), num(e.distance.ks), num(e.distance.ks_argmax),
                                  num(e.distance.wasserstein), num(e.log_spread.range.value), num(e.log_range_ratio)});
        }
    } else {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["distribution"] = {{"sampler", "power_of_uniform"}, {"a", exponent}, {"base", dist_base}};
        j["entries"] = Json::array();
        for (const auto& e : entries) {
            j["entries"].push_back({{"base", e.base},
                                    {"distance", to_json(e.distance)},
                                    {"log_spread", to_json(e.log_spread)},
                                    {"log_range_ratio", e.log_range_ratio},
                                    {"log_std_ratio", e.log_std_ratio}});
        }
        sink.stream() << j.dump(2) << '\n';
    }
    sink.close();
}

void audit_benford_log(const RunConfig& cfg, const std::string& ks_arg, std::ostream& out) {
    const Base base(cfg.base);
    const auto ks = parse_ints(ks_arg, "--k");
    Sink sink(cfg.output, out);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["base"] = cfg.base;
    j["entries"] = Json::array();
    if (cfg.format == "csv") sink.stream() << csv({"k", "ks_log", "ks_argmax", "wasserstein_log", "ks_decade"});
    for (int k : ks) {
        const auto log_report = log_of_benford_audit(k, base);
        const auto decade = ks_distance(log_mod_one(AnalyticDistribution(BenfordDecade{k, base}), base));
        if (cfg.format == "csv") {
            sink.stream() << csv({std::to_string(k), num(log_report.ks), num(log_report.ks_argmax),
                                  num(log_report.wasserstein), num(decade.value)});
        } else {
            j["entries"].push_back({{"k", k}, {"log_scale", to_json(log_report)}, {"decade_ks", decade.value}});
        }
    }
    if (cfg.format != "csv") sink.stream() << j.dump(2) << '\n';
    sink.close();
}

// ---------------------------------------------------------------------------
// analyze

int analyze(const RunConfig& cfg, const std::string& input, const std::optional<std::string>& column,
            bool digits_from_text, std::istream& in, std::ostream& out, std::ostream& err) {
    const Base base(cfg.base);
    if (digits_from_text && cfg.base != 10) {
        throw ConfigError("--digits-from-text requires base 10");
    }

    Dataset ds;
    if (input == "-") {
        ds = read_dataset(in, "stdin", column);
    } else {
        std::ifstream file(input);
        if (!file) throw IoError("cannot open input file '" + input + "'");
        ds = read_dataset(file, input, column);
    }
    if (ds.values.empty()) {
        err << "error: no usable positive values in " << ds.source << " (" << ds.total_rows << " rows, "
            << ds.skipped.total() << " skipped)\n";
        return kExitEmpty;
    }

    std::vector<std::size_t> counts(static_cast<std::size_t>(cfg.base - 1), 0);
    for (std::size_t i = 0; i < ds.values.size(); ++i) {
        const int d = digits_from_text ? first_digit_from_text(ds.texts[i]) : first_digit(ds.values[i], base);
        ++counts[static_cast<std::size_t>(d - 1)];
    }
    const double n = static_cast<double>(ds.values.size());
    const auto chi = first_digit_chisq_from_counts(counts, base);
    const double ks = empirical_ks(ds.values, base);

    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"digit", "count", "observed", "benford"});
        for (std::size_t i = 0; i < counts.size(); ++i) {
            const int d = static_cast<int>(i) + 1;
            sink.stream() << csv({std::to_string(d), std::to_string(counts[i]),
                                  num(static_cast<double>(counts[i]) / n), num(benford_first_digit_pmf(d, base))});
        }
        sink.close();
        return kExitOk;
    }

    Json j;
    j["schema_version"] = kSchemaVersion;
    j["source"] = ds.source;
    j["base"] = cfg.base;
    j["n"] = ds.values.size();
    j["total_rows"] = ds.total_rows;
    j["skipped"] = {{"total", ds.skipped.total()},
                    {"reasons",
                     {{"empty", ds.skipped.empty},
                      {"non_numeric", ds.skipped.non_numeric},
                      {"non_positive", ds.skipped.non_positive},
                      {"non_finite", ds.skipped.non_finite},
                      {"out_of_range", ds.skipped.out_of_range}}}};
    j["digits_from_text"] = digits_from_text;
    j["first_digits"] = Json::array();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const int d = static_cast<int>(i) + 1;
        j["first_digits"].push_back({{"digit", d},
                                     {"count", counts[i]},
                                     {"observed", static_cast<double>(counts[i]) / n},
                                     {"benford", benford_first_digit_pmf(d, base)}});
    }
    j["ks"] = ks;
    j["dkw_99"] = dkw_bound(ds.values.size(), 0.01);
    j["chisq"] = {{"statistic", chi.statistic}, {"dof", chi.dof}};
    if (ds.values.size() >= 2) {
        j["spread"] = {{"raw", to_json(spread_sample(ds.values, Scale::raw, cfg.alpha, base))},
                       {"log", to_json(spread_sample(ds.values, Scale::log, cfg.alpha, base))}};
    } else {
        j["spread"] = nullptr;
    }
    j["advisory"] = "Large spread, on the raw or the logarithmic scale, does not imply conformance to "
                    "Benford's law; judge conformance by ks and chisq only.";
    sink.stream() << j.dump(2) << '\n';
    sink.close();
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

std::uint64_t unsigned_field(const Json& j, const std::string& path, std::uint64_t min) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        throw SchemaError(path + ": expected a non-negative integer");
    }
    const auto v = j.get<std::uint64_t>();
    if (v < min) throw SchemaError(path + ": must be at least " + std::to_string(min));
    return v;
}

MixtureSpec parse_mixture(const Json& j, const RunConfig& cfg, bool seed_flag) {
    if (!j.is_object()) throw SchemaError("$: expected an object");
    for (const auto& [key, _] : j.items()) {
        if (key != "schema_version" && key != "samples_per_component" && key != "seed" && key != "components" &&
            key != "random_components") {
            throw SchemaError("$." + key + ": unknown field");
        }
    }
    const std::size_t per = j.contains("samples_per_component")
                                ? unsigned_field(j["samples_per_component"], "$.samples_per_component", 1)
                                : cfg.samples;
    const std::uint64_t seed = seed_flag || !j.contains("seed") ? cfg.seed : unsigned_field(j["seed"], "$.seed", 0);

    const bool has_list = j.contains("components");
    const bool has_random = j.contains("random_components");
    if (has_list == has_random) throw SchemaError("$: exactly one of 'components' or 'random_components' is required");
    if (has_random) {
        const auto count = unsigned_field(j["random_components"], "$.random_components", 1);
        return random_mixture(count, per, seed);
    }

    const auto& list = j["components"];
    if (!list.is_array() || list.empty()) throw SchemaError("$.components: expected a nonempty array");
    MixtureSpec spec{{}, per, seed};
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "$.components[" + std::to_string(i) + "]";
        const auto& c = list[i];
        if (!c.is_object()) throw SchemaError(path + ": expected an object");
        if (!c.contains("sampler") || !c["sampler"].is_string()) throw SchemaError(path + ".sampler: expected a string");
        MixtureComponent comp{c["sampler"].get<std::string>(), {}};
        if (c.contains("params")) {
            if (!c["params"].is_object()) throw SchemaError(path + ".params: expected an object");
            for (const auto& [name, value] : c["params"].items()) {
                if (!value.is_number()) throw SchemaError(path + ".params." + name + ": expected a number");
                comp.params[name] = value.get<double>();
            }
        }
        try {
            validate_component(comp);
        } catch (const ConfigError& e) {
            const bool bad_id = std::string_view(e.what()).rfind("unknown sampler", 0) == 0;
            const std::string where = path + (bad_id ? ".sampler" : ".params");
            throw SchemaError(where + ": " + e.what());
        }
        spec.components.push_back(std::move(comp));
    }
    return spec;
}

void simulate(const RunConfig& cfg, const std::string& spec_path, bool seed_flag, std::ostream& out) {
    std::ifstream file(spec_path);
    if (!file) throw IoError("cannot open mixture spec '" + spec_path + "'");
    Json j;
    try {
        j = Json::parse(file);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("$: invalid JSON: ") + e.what());
    }
    const auto spec = parse_mixture(j, cfg, seed_flag);
    const auto trace = mixture_experiment(spec, Base(cfg.base));

    Sink sink(cfg.output, out);
    if (cfg.format == "csv") {
        sink.stream() << csv({"n_components", "ks", "chisq"});
        for (const auto& t : trace) {
            sink.stream() << csv({std::to_string(t.n_components), num(t.ks), num(t.chisq)});
        }
    } else {
        Json r;
        r["schema_version"] = kSchemaVersion;
        r["base"] = cfg.base;
        r["spec"] = to_json(spec);
        r["trace"] = to_json(trace);
        sink.stream() << r.dump(2) << '\n';
    }
    sink.close();
}

} // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit spread-based explanations of Benford's law", "benford-audit"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--base", cfg.base, "Radix for digits and logarithms")->check(CLI::Range(2, 1 << 20));
    auto* seed_opt = app.add_option("--seed", cfg.seed, "Seed for Monte Carlo streams");
    app.add_option("--samples", cfg.samples, "Samples per mixture component")->check(CLI::PositiveNumber);
    app.add_option("--alpha", cfg.alpha, "Quantile level for the quantile spread (0 < alpha < 1/2)")
        ->check(CLI::Range(0.0, 0.5));
    app.add_option("--grid", cfg.grid, "Phase grid size for prop1")->check(CLI::Range(16, 1 << 24));
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output, "Output file (default stdout)");

    auto* audit = app.add_subcommand("audit", "Run one of the audit experiments")->fallthrough();
    audit->require_subcommand(1);
    auto* prop1 = audit->add_subcommand("prop1", "Uniform(0,T) mantissa distance versus phase")->fallthrough();
    unsigned counter_n = 1;
    auto* counter = audit->add_subcommand("counterexamples", "Leading-one fraction of 1..2b^n")->fallthrough();
    counter->add_option("--n", counter_n, "Exponent n")->check(CLI::Range(0U, 100000U));
    auto* nonmono = audit->add_subcommand("nonmonotonicity", "b^Y versus b^(3Y/2)")->fallthrough();
    std::string bases_arg = "10,2";
    double exponent = 1.0;
    int dist_base = 10;
    auto* basechange = audit->add_subcommand("basechange", "Distances of b^(aY) across bases")->fallthrough();
    basechange->add_option("--bases", bases_arg, "Comma-separated bases");
    basechange->add_option("--exponent", exponent, "Exponent a of the power-of-uniform")->check(CLI::PositiveNumber);
    basechange->add_option("--dist-base", dist_base, "Base of the power-of-uniform")->check(CLI::Range(2, 1 << 20));
    std::string ks_arg = "1,5,10";
    auto* benford_log = audit->add_subcommand("benford-log", "Mantissa law of log_b X_k")->fallthrough();
    benford_log->add_option("--k", ks_arg, "Comma-separated decades k >= 1");

    std::string input = "-";
    std::optional<std::string> column;
    bool digits_from_text = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Benford conformance of a dataset")->fallthrough();
    analyze_cmd->add_option("input", input, "Input file, or - for stdin");
    analyze_cmd->add_option("--column", column, "CSV column name or 0-based index");
    analyze_cmd->add_flag("--digits-from-text", digits_from_text, "Take first digits from the decimal text");

    std::string spec_path;
    auto* simulate_cmd = app.add_subcommand("simulate", "Pooled conformance trace of a mixture")->fallthrough();
    simulate_cmd->add_option("spec", spec_path, "Mixture spec JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*prop1) {
            audit_prop1(cfg, out, err);
        } else if (*counter) {
            audit_counterexamples(cfg, counter_n, out);
        } else if (*nonmono) {
            audit_nonmonotonicity(cfg, out);
        } else if (*basechange) {
            audit_basechange(cfg, bases_arg, exponent, dist_base, out);
        } else if (*benford_log) {
            audit_benford_log(cfg, ks_arg, out);
        } else if (*analyze_cmd) {
            return analyze(cfg, input, column, digits_from_text, in, out, err);
        } else if (*simulate_cmd) {
            simulate(cfg, spec_path, seed_opt->count() > 0, out);
        }
    } catch (const std::exception& e) {
        // Format, schema, configuration, domain and I/O errors are all usage failures.
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace benford::cli
