#pragma once

#include "benford/audit.hpp"
#include "benford/metrics.hpp"
#include "benford/modone.hpp"
#include "benford/spread.hpp"

#include <json.hpp>

#include <string>

namespace benford {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// {kind, base, breakpoints, pieces: [{c1, c2, c3}]}; step CDFs also carry atoms.
[[nodiscard]] Json to_json(const ModOneCdf& cdf);
/// Inverse of to_json(ModOneCdf).
[[nodiscard]] ModOneCdf mod_one_cdf_from_json(const Json& j);

/// {ks, ks_argmax, wasserstein}
[[nodiscard]] Json to_json(const DistanceReport& report);

/// Scale tag plus {value, estimated} per measure; an infinite range has
/// value null and infinite true.
[[nodiscard]] Json to_json(const SpreadReport& report);

[[nodiscard]] Json to_json(const NonmonotonicityReport& report);
[[nodiscard]] Json to_json(const std::vector<TracePoint>& trace);
[[nodiscard]] Json to_json(const MixtureSpec& spec);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_double(double value);

} // namespace benford
