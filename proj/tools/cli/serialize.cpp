#include "serialize.hpp"

namespace aperiodica::cli {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json scalars(const std::vector<Scalar>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

std::vector<Scalar> parse_scalars(const Json& a) {
  std::vector<Scalar> out;
  for (const auto& x : a) out.push_back(Scalar::parse(x.get<std::string>()));
  return out;
}

}  // namespace

Json to_json(const Scalar& x) { return x.str(); }
Json to_json(const Region& E) { return E.str(); }

Json to_json(const TubeMeasure& t) {
  Json j;
  j["method"] = std::string(to_string(t.method));
  j["exact"] = opt(t.exact_value);
  j["estimate"] = t.value;
  j["error_bound"] = t.error_bound;
  return j;
}

Json to_json(const DiscrepancyReport& r) {
  Json j;
  j["region"] = r.region.str();
  j["count"] = r.count;
  j["expected"] = r.expected.str();
  j["discrepancy"] = r.discrepancy.str();
  j["sign"] = r.sign;
  j["tube1"] = to_json(r.tube1);
  j["ratio"] = opt(r.ratio_exact);
  j["ratio_estimate"] = r.ratio;
  return j;
}

Json to_json(const RobustTranscript& t) {
  Json j;
  j["ell"] = t.ell.str();
  j["shifts_checked"] = t.shifts_checked;
  j["min_count"] = t.min_count;
  j["max_count"] = t.max_count;
  j["worst_shift"] = t.worst_shift.str();
  j["worst_discrepancy"] = t.worst_discrepancy.str();
  j["worst_ratio"] = opt(t.worst_ratio_exact);
  j["worst_ratio_estimate"] = t.worst_ratio;
  j["via_translate_bound"] = t.via_translate_bound;
  j["via_patch_return"] = t.via_patch_return;
  return j;
}

Json to_json(const DeviantFind& f) {
  Json j;
  j["region"] = f.region.str();
  j["sign"] = f.sign;
  j["c_achieved"] = opt(f.c_achieved_exact);
  j["c_achieved_estimate"] = f.c_achieved;
  j["report"] = to_json(f.report);
  j["robust"] = opt(f.robust);
  return j;
}

Json to_json(const DeviantSearch& s) {
  Json j;
  j["status"] = s.find ? "found" : "not-found";
  j["find"] = opt(s.find);
  j["sup_ratio_estimate"] = s.sup_ratio;
  j["sup_region"] = opt(s.sup_region);
  j["points_scanned"] = s.points_scanned;
  j["truncated"] = s.truncated;
  return j;
}

Json to_json(const RepetitivityResult& r) {
  Json j;
  j["repetitive"] = r.repetitive;
  j["patch_size"] = r.patch_size;
  j["radius"] = r.repetitive ? Json(r.radius.str()) : Json(nullptr);
  j["occurrences"] = scalars(r.occurrences);
  return j;
}

Json to_json(const HallWitness& w) {
  Json j;
  j["side"] = w.side == HallWitness::Side::left ? "left" : "right";
  j["members"] = w.members;
  j["neighbors"] = w.neighbors;
  j["threshold_sq"] = w.threshold_sq.str();
  return j;
}

Json to_json(const MatchOutcome& m) {
  Json j;
  j["status"] = std::string(to_string(m.status));
  j["bottleneck_sq"] = m.bottleneck_sq.str();
  j["bottleneck"] = opt(m.bottleneck);
  j["bottleneck_estimate"] = m.bottleneck_value;
  j["defect_count"] = m.defect_count;
  Json pairs = Json::array();
  for (std::size_t u = 0; u < m.matching.size(); ++u)
    pairs.push_back(m.matching[u] == kUnmatched ? Json(nullptr) : Json(m.matching[u]));
  j["matching"] = pairs;
  j["witness"] = opt(m.witness);
  j["certificate"] = opt(m.certificate);
  j["fast_path"] = m.fast_path;
  return j;
}

Json to_json(const DensityResult& d) {
  Json j;
  j["exact"] = opt(d.exact);
  j["estimate"] = d.value;
  j["analytic"] = d.analytic;
  j["tail_spread"] = d.tail_spread;
  Json rs = Json::array();
  for (std::size_t i = 0; i < d.ratios.size(); ++i) {
    Json e;
    e["exact"] = i < d.ratios_exact.size() ? opt(d.ratios_exact[i]) : Json(nullptr);
    e["estimate"] = d.ratios[i];
    rs.push_back(e);
  }
  j["ratios"] = rs;
  return j;
}

Json to_json(const VanHoveDiagnostics& v) {
  Json j;
  j["pass"] = v.pass;
  j["eps"] = scalars(v.eps);
  j["failing_eps"] = v.failing_eps ? Json(*v.failing_eps) : Json(nullptr);
  j["failing_index"] = v.failing_index ? Json(*v.failing_index) : Json(nullptr);
  j["reason"] = v.reason;
  return j;
}

Json to_json(const TowerLevel& l) {
  Json j;
  j["index"] = l.index;
  j["letter"] = std::string(to_string(l.letter));
  j["c"] = l.c.str();
  j["ell"] = l.ell.str();
  j["support"] = l.support.str();
  j["offset"] = l.offset.str();
  j["d_sign"] = l.d_sign;
  j["report"] = to_json(l.report);
  j["points"] = scalars(l.points);
  return j;
}

Json to_json(const PatchTower& t) {
  Json j;
  j["word"] = t.word;
  j["source"] = t.source ? t.source->spec() : "";
  j["rho"] = t.rho.str();
  j["c"] = scalars(t.c);
  j["ell"] = scalars(t.ell);
  j["complete"] = t.complete;
  j["failure_level"] = t.failure_level ? Json(*t.failure_level) : Json(nullptr);
  j["failure_reason"] = t.failure_reason;
  j["nested"] = t.nested;
  j["deviance_persists"] = t.deviance_persists;
  Json ls = Json::array();
  for (const auto& l : t.levels) ls.push_back(to_json(l));
  j["levels"] = ls;
  return j;
}

Json to_json(const HullElementWindow& w) {
  Json j;
  j["word"] = w.word;
  j["support"] = w.support.str();
  j["recenter_shift"] = w.recenter_shift.str();
  j["count"] = w.points.size();
  return j;
}

Json to_json(const DistinguishEvidence& e) {
  Json j;
  j["level"] = e.level;
  j["first_is_d"] = e.first_is_d;
  j["region"] = e.region.str();
  j["delta"] = e.delta.str();
  j["ell"] = e.ell.str();
  j["count_d"] = e.count_d;
  j["count_n"] = e.count_n;
  j["expected"] = e.expected.str();
  j["discrepancy_d"] = e.disc_d.str();
  j["discrepancy_n"] = e.disc_n.str();
  j["ratio"] = opt(e.ratio_exact);
  j["ratio_estimate"] = e.ratio;
  j["c"] = e.c.str();
  j["threshold"] = (Scalar::fraction(9, 10) * e.c).str();
  j["pass"] = e.pass;
  return j;
}

PatchTower tower_from_json(const Json& j) {
  PatchTower t;
  t.word = j.at("word").get<std::string>();
  t.source = parse_source(j.at("source").get<std::string>());
  t.rho = Scalar::parse(j.at("rho").get<std::string>());
  t.c = parse_scalars(j.at("c"));
  t.ell = parse_scalars(j.at("ell"));
  t.complete = j.at("complete").get<bool>();
  if (!j.at("failure_level").is_null()) t.failure_level = j.at("failure_level").get<std::size_t>();
  t.failure_reason = j.at("failure_reason").get<std::string>();
  for (const auto& lj : j.at("levels")) {
    TowerLevel l;
    l.index = lj.at("index").get<std::size_t>();
    l.letter = lj.at("letter").get<std::string>() == "D" ? Letter::D : Letter::N;
    l.c = Scalar::parse(lj.at("c").get<std::string>());
    l.ell = Scalar::parse(lj.at("ell").get<std::string>());
    l.support = Region::parse(lj.at("support").get<std::string>());
    l.offset = Scalar::parse(lj.at("offset").get<std::string>());
    l.d_sign = lj.at("d_sign").get<int>();
    l.points = parse_scalars(lj.at("points"));
    l.report = discrepancy_from_count(l.points.size(), t.rho, l.support);
    t.levels.push_back(std::move(l));
  }
  verify_tower(t);
  return t;
}

}  // namespace aperiodica::cli
