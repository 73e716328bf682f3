#include "benford/report_json.hpp"

#include "benford/errors.hpp"

#include <charconv>
#include <cmath>

namespace benford {

namespace {

Json measure_json(const Measure& m) {
    Json j;
    if (m.infinite) {
        j["value"] = nullptr;
        j["infinite"] = true;
    } else {
        j["value"] = m.value;
    }
    j["estimated"] = m.estimated;
    return j;
}

} // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

Json to_json(const ModOneCdf& cdf) {
    Json j;
    j["kind"] = cdf.is_step() ? "step" : "continuous";
    j["base"] = cdf.base().value();
    j["breakpoints"] = Json::array();
    for (double b : cdf.breakpoints()) j["breakpoints"].push_back(b);
    j["pieces"] = Json::array();
    for (const auto& p : cdf.pieces()) j["pieces"].push_back({{"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3}});
    if (cdf.is_step()) {
        j["atoms"] = Json::array();
        for (const auto& a : cdf.atoms()) j["atoms"].push_back({{"position", a.position}, {"mass", a.mass}});
    }
    return j;
}

ModOneCdf mod_one_cdf_from_json(const Json& j) {
    const Base base(j.at("base").get<int>());
    if (j.at("kind") == "step") {
        std::vector<Atom> atoms;
        for (const auto& a : j.at("atoms")) atoms.push_back({a.at("position").get<double>(), a.at("mass").get<double>()});
        return ModOneCdf::step(base, std::move(atoms));
    }
    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<Piece> pieces;
    for (const auto& p : j.at("pieces")) {
        pieces.push_back({p.at("c1").get<double>(), p.at("c2").get<double>(), p.at("c3").get<double>()});
    }
    return ModOneCdf::continuous(base, std::move(bps), std::move(pieces));
}

Json to_json(const DistanceReport& report) {
    return {{"ks", report.ks}, {"ks_argmax", report.ks_argmax}, {"wasserstein", report.wasserstein}};
}

Json to_json(const SpreadReport& report) {
    Json j;
    j["scale"] = std::string(to_string(report.scale));
    j["base"] = report.base;
    j["alpha"] = report.alpha;
    j["range"] = measure_json(report.range);
    j["quantile_spread"] = measure_json(report.quantile_spread);
    j["std_dev"] = measure_json(report.std_dev);
    j["gini_mean_difference"] = measure_json(report.gini_mean_difference);
    return j;
}

Json to_json(const NonmonotonicityReport& report) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["base"] = report.base;
    j["x"] = {{"description", "b^Y"}, {"distance", to_json(report.x_distance)}};
    j["z"] = {{"description", "b^(3Y/2)"}, {"distance", to_json(report.z_distance)}};
    j["rows"] = Json::array();
    for (const auto& r : report.rows) {
        j["rows"].push_back({{"measure", r.measure},
                             {"scale", std::string(to_string(r.scale))},
                             {"x_value", r.x_value},
                             {"z_value", r.z_value}});
    }
    return j;
}

Json to_json(const std::vector<TracePoint>& trace) {
    Json j = Json::array();
    for (const auto& t : trace) {
        j.push_back({{"n_components", t.n_components},
                     {"n_samples", t.n_samples},
                     {"ks", t.ks},
                     {"chisq", t.chisq},
                     {"dof", t.dof}});
    }
    return j;
}

Json to_json(const MixtureSpec& spec) {
    Json j;
    j["samples_per_component"] = spec.samples_per_component;
    j["seed"] = spec.seed;
    j["components"] = Json::array();
    for (const auto& c : spec.components) {
        Json params = Json::object();
        for (const auto& [k, v] : c.params) params[k] = v;
        j["components"].push_back({{"sampler", c.sampler}, {"params", params}});
    }
    return j;
}

} // namespace benford
