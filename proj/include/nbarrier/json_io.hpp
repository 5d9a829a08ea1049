#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nbarrier/barrier.hpp"
#include "nbarrier/model.hpp"
#include "nbarrier/nonexist.hpp"
#include "nbarrier/tangent.hpp"
#include "nbarrier/waves.hpp"

namespace nbarrier {

using json = nlohmann::json;

/// Which parameter family a configuration document describes, detected from
/// its key set: "a1" marks a scaled system, "c33" a three-species one,
/// anything else an unscaled two-species system.
enum class ConfigKind { SCALED, UNSCALED, THREE_SPECIES };

ConfigKind detect_config(const json& doc);

struct ScaledConfig {
    ScaledParams params;
    Weights weights{1.0, 1.0};
    std::optional<double> theta;
};

struct UnscaledConfig {
    UnscaledParams params;
    Weights weights{1.0, 1.0};
};

/// Strict parsers: every key must be known, required keys must be present,
/// and values must be numbers. Violations raise ConfigError.
ScaledConfig parse_scaled_config(const json& doc);
UnscaledConfig parse_unscaled_config(const json& doc);
ThreeSpeciesParams parse_three_config(const json& doc);

// Output serializers. Key order in dumps is alphabetical (nlohmann
// default), which keeps artifacts byte-stable across runs.
json to_json(const BoundPair& b);
json to_json(const Barrier& b);
json to_json(const TangentSolution& t);
json to_json(const ThreeSpeciesVerdict& v);
json to_json(const VerificationReport& r);

/// Sidecar metadata written next to a profile CSV.
json profile_sidecar(const WaveProfile& profile, double L, int N,
                     const std::string& config_hash);

/// Profile CSV with header "x,u,v", one row per node, shortest round-trip
/// number formatting.
std::string profile_csv(const WaveProfile& profile);

/// Parse a profile CSV produced by profile_csv (theta and meta are left for
/// the caller / sidecar to fill in).
WaveProfile parse_profile_csv(const std::string& text);

/// One row per sweep point: value, phi1, phi2, h1..h3, margins, verdict.
std::string sweep_csv(const std::vector<double>& values,
                      const std::vector<ThreeSpeciesVerdict>& verdicts);

} // namespace nbarrier
