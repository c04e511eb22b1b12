#pragma once

#include <aperiodica/aperiodica.hpp>

#include <json.hpp>

namespace aperiodica::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& x);
Json to_json(const Region& E);
Json to_json(const TubeMeasure& t);
Json to_json(const DiscrepancyReport& r);
Json to_json(const RobustTranscript& t);
Json to_json(const DeviantFind& f);
Json to_json(const DeviantSearch& s);
Json to_json(const RepetitivityResult& r);
Json to_json(const HallWitness& w);
Json to_json(const MatchOutcome& m);
Json to_json(const DensityResult& d);
Json to_json(const VanHoveDiagnostics& v);
Json to_json(const TowerLevel& l);
Json to_json(const PatchTower& t);
Json to_json(const HullElementWindow& w);
Json to_json(const DistinguishEvidence& e);

// Rebuilds a tower from its transcript; the source is re-created from its
// spec and level reports are recomputed from the stored points.
PatchTower tower_from_json(const Json& j);

}  // namespace aperiodica::cli
