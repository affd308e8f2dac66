#pragma once

// JSON documents exchanged with the command-line tool. Quantities may be raw
// SI numbers or unit-suffixed strings ("1 cm", "131 GPa", "1 g"). Every
// emitted document carries "schema": "nlveh/1".

#include <nlohmann/json.hpp>
#include <optional>

#include "nlveh/duffing_analysis.hpp"
#include "nlveh/frequency_sweep.hpp"
#include "nlveh/harvester_sim.hpp"
#include "nlveh/optimizer.hpp"
#include "nlveh/sizing.hpp"
#include "nlveh/spring_mechanics.hpp"
#include "nlveh/units.hpp"

namespace nlveh::config {

using json = nlohmann::json;

inline constexpr const char* kSchema = "nlveh/1";

/// Reads j[key] as a quantity of the given dimension; ConfigError if missing
/// (and no fallback) or malformed.
double quantity(const json& j, const char* key, units::Dimension dim, std::optional<double> fallback = std::nullopt);

/// Rejects documents whose "schema" key is present and differs from kSchema.
void check_schema(const json& doc);

Material material_from_json(const json& j);        ///< {"E": ...}
BeamGeometry beam_from_json(const json& j);        ///< {"L", "b", "e"}
HShapeGeometry hshape_from_json(const json& j);    ///< beam keys plus {"a", "l1", "l3"}

/// {"m", "f0", "Q" | "xi_m", "xi_e", "beta" | ("alpha" and "e")}
HarvesterParams harvester_from_json(const json& j);

/// {"mode", "m", "Q", "bounds": {"f0": [lo, hi], ...}, "restarts", "seed", ...}
OptSpec opt_spec_from_json(const json& j);

/// {"f0", "beta", "m", "material": {...} | "E", "b", "e", "l1", "l3", "beam_count"}
SizingSpec sizing_spec_from_json(const json& j);

/// {"N", "l", "B", "m", "omega" | "f"}
CoilSpec coil_from_json(const json& j);

json to_json(const SpringLaw& law);
json to_json(const HarvesterParams& p);
json to_json(const OptResult& r, bool include_history = false);
json to_json(const SizingResult& r);
json to_json(const SweepResult& r);
json to_json(const ComparisonReport& r);

}  // namespace nlveh::config
