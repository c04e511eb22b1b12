#include "run.hpp"

#include "io.hpp"
#include "serialize.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aperiodica::cli {

namespace {

Json envelope(const RunConfig& cfg, Json result) {
  Json j;
  j["command"] = cfg.command;
  j["config_hash"] = config_hash(cfg);
  j["config"] = to_json(cfg);
  j["result"] = std::move(result);
  return j;
}

void write_json(const RunConfig& cfg, const std::string& path, const Json& result, std::ostream& out) {
  emit(path, envelope(cfg, result).dump(2) + "\n", out);
}

Scalar resolve_rho(const RunConfig& cfg, const PointSource& S) {
  DensityDescriptor d = S.density();
  if (cfg.rho == "exact") {
    require(d.exact.has_value(), ErrorKind::invalid_parameter,
            "source " + S.spec() + " has no exact density; pass --rho auto or a value");
    return *d.exact;
  }
  if (cfg.rho == "auto") return d.exact ? *d.exact : Scalar(rational_from_double(d.value));
  return Scalar::parse(cfg.rho);
}

Scalar single_c(const RunConfig& cfg) {
  require(!cfg.c.empty(), ErrorKind::invalid_parameter, "--c is required");
  return Scalar::parse(cfg.c);
}

std::vector<Scalar> c_list(const RunConfig& cfg) {
  std::vector<Scalar> cs;
  for (const auto& t : split_list(cfg.c)) cs.push_back(Scalar::parse(t));
  if (cs.empty())
    for (std::size_t i = 1; i <= cfg.word.size(); ++i) cs.emplace_back(static_cast<long long>(i));
  return cs;
}

Region need_region(const std::string& text, const char* flag) {
  require(!text.empty(), ErrorKind::invalid_parameter, std::string(flag) + " is required");
  return Region::parse(text);
}

std::string cell(const std::optional<Scalar>& exact, double estimate) {
  if (exact) return exact->str();
  std::ostringstream os;
  os << std::setprecision(17) << estimate;
  return os.str();
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  Region W = need_region(cfg.window, "--window");
  PointFile f;
  f.dim = S->dim();
  f.source = S->spec();
  f.points = S->enumerate(W);
  std::ostringstream os;
  write_points(os, f);
  emit(cfg.output, os.str(), out);
  return kSuccess;
}

int cmd_density(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  auto seq = region_family(cfg.family, cfg.max_i, S->dim());
  DensityOptions o;
  o.van_hove_threshold = cfg.threshold;
  Json r = to_json(density(*S, seq, o));
  r["source"] = S->spec();
  write_json(cfg, cfg.output, r, out);
  return kSuccess;
}

int cmd_discrepancy(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  Scalar rho = resolve_rho(cfg, *S);
  Json r = to_json(discrepancy_report(*S, rho, need_region(cfg.region, "--region")));
  r["rho"] = rho.str();
  write_json(cfg, cfg.output, r, out);
  return kSuccess;
}

int cmd_vanhove(const RunConfig& cfg, std::ostream& out) {
  auto seq = region_family(cfg.family, cfg.max_i, cfg.dim);
  std::vector<Scalar> eps;
  for (const auto& t : split_list(cfg.eps)) eps.push_back(Scalar::parse(t));
  VanHoveDiagnostics vh = van_hove_check(seq, eps, cfg.threshold);
  std::ostringstream os;
  os << "i,region,measure";
  for (const auto& e : eps) os << ",eps=" << e.str();
  os << '\n';
  for (std::size_t i = 0; i < seq.size(); ++i) {
    os << i + 1 << ',' << seq[i].str() << ',' << measure(seq[i]).str();
    for (std::size_t e = 0; e < eps.size(); ++e) os << ',' << cell(vh.ratios_exact[e][i], vh.ratios[e][i]);
    os << '\n';
  }
  os << "# pass=" << (vh.pass ? "true" : "false");
  if (!vh.reason.empty()) os << " reason=" << vh.reason;
  os << '\n';
  emit(cfg.output, os.str(), out);
  if (!cfg.json_output.empty()) write_json(cfg, cfg.json_output, to_json(vh), out);
  return kSuccess;
}

int cmd_deviant(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  Scalar rho = resolve_rho(cfg, *S);
  Region W = need_region(cfg.window, "--window");
  DeviantSearchOptions o;
  o.min_length = Scalar::parse(cfg.min_length);
  o.sign = cfg.sign;
  if (cfg.selection == "shortest") o.selection = Selection::shortest;
  else require(cfg.selection == "max", ErrorKind::invalid_parameter, "--selection is max or shortest");
  DeviantSearch d;
  if (!cfg.robust_ell.empty()) {
    RobustSearchOptions ro;
    ro.base = o;
    ro.workers = cfg.workers;
    d = find_shift_robust_deviant(*S, rho, single_c(cfg), Scalar::parse(cfg.robust_ell), W, cfg.budget, ro);
  } else {
    d = find_deviant(*S, rho, single_c(cfg), W, cfg.budget, o);
  }
  Json r = to_json(d);
  r["rho"] = rho.str();
  r["c"] = single_c(cfg).str();
  write_json(cfg, cfg.output, r, out);
  return kSuccess;
}

int cmd_reprad(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  Region P = need_region(cfg.patch, "--patch");
  Region W = need_region(cfg.window, "--window");
  RepetitivityResult r = repetitivity_radius(*S, P, W);
  Json j = to_json(r);
  if (!r.repetitive) j["error"] = std::string(to_string(ErrorKind::not_repetitive));
  write_json(cfg, cfg.output, j, out);
  return kSuccess;
}

int cmd_match(const RunConfig& cfg, std::ostream& out) {
  require(!cfg.left.empty() && !cfg.right.empty(), ErrorKind::invalid_parameter, "--left and --right are required");
  PointFile a = read_points_file(cfg.left), b = read_points_file(cfg.right);
  require(a.dim == b.dim, ErrorKind::dimension_mismatch, "point files have different dimensions");
  MatchInstance inst{a.points, b.points};
  write_json(cfg, cfg.output, to_json(bottleneck_match(inst)), out);
  return kSuccess;
}

int cmd_nonbd(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S1 = parse_source(cfg.source), S2 = parse_source(cfg.source2);
  require(S1->dim() == S2->dim(), ErrorKind::dimension_mismatch, "sources have different dimensions");
  auto seq = region_family(cfg.family, cfg.max_i, S1->dim());
  NonBdResult res = non_bd_ratio(*S1, *S2, seq, cfg.threshold);
  std::ostringstream os;
  os << "i,region,count1,count2,difference,tube1,ratio\n";
  for (const auto& e : res.entries)
    os << e.index + 1 << ',' << seq[e.index].str() << ',' << e.count1 << ',' << e.count2 << ','
       << e.difference.str() << ',' << cell(e.tube1.exact_value, e.tube1.value) << ','
       << cell(e.ratio_exact, e.ratio) << '\n';
  os << "# verdict=" << to_string(res.verdict) << '\n';
  emit(cfg.output, os.str(), out);
  return kSuccess;
}

int cmd_hull(const RunConfig& cfg, std::ostream& out) {
  SourcePtr S = parse_source(cfg.source);
  require(!cfg.word.empty(), ErrorKind::invalid_parameter, "--word is required");
  TowerConfig tc;
  tc.rho = resolve_rho(cfg, *S);
  tc.c = c_list(cfg);
  tc.ell1 = Scalar::parse(cfg.ell1);
  tc.margin = Scalar::parse(cfg.margin);
  tc.base_min_length = Scalar::parse(cfg.min_length);
  tc.budget = cfg.budget;
  tc.workers = cfg.workers;
  for (const auto& w : split_list(cfg.window, ';')) tc.windows.push_back(Region::parse(w));
  if (tc.windows.empty()) tc.windows.push_back(Region::interval(Scalar(0), Scalar(1'000'000)));
  PatchTower t = build_tower(S, cfg.word, tc);
  Json r;
  r["tower"] = to_json(t);
  if (t.complete) {
    HullElementWindow w = emit_hull_element(t);
    r["hull_element"] = to_json(w);
    if (!cfg.output.empty()) {
      PointFile f;
      f.dim = 1;
      f.source = S->spec();
      for (const auto& p : w.points) f.points.push_back(Point{p});
      std::ostringstream os;
      write_points(os, f);
      emit(cfg.output, os.str(), out);
    }
  } else {
    r["hull_element"] = nullptr;
  }
  write_json(cfg, cfg.json_output, r, out);
  return kSuccess;
}

PatchTower load_tower(const std::string& path) {
  require(!path.empty(), ErrorKind::invalid_parameter, "--tower-a and --tower-b are required");
  std::ifstream in(path);
  require(in.good(), ErrorKind::invalid_parameter, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, path + ": " + e.what());
  }
  if (j.contains("result")) j = j["result"];
  if (j.contains("tower")) j = j["tower"];
  try {
    return tower_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, path + ": " + e.what());
  }
}

int cmd_distinguish(const RunConfig& cfg, std::ostream& out) {
  PatchTower a = load_tower(cfg.tower_a), b = load_tower(cfg.tower_b);
  write_json(cfg, cfg.output, to_json(distinguish(a, b, cfg.level)), out);
  return kSuccess;
}

int cmd_verify_lemmas(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions o;
  o.seed = cfg.seed;
  auto results = run_all_suites(o, cfg.workers);
  std::ostringstream os;
  os << "suite\tcases\tfailures\tresult\tdetail\n";
  Json arr = Json::array();
  bool all = true;
  for (const auto& s : results) {
    os << s.name << '\t' << s.cases << '\t' << s.failures << '\t' << (s.pass ? "PASS" : "FAIL") << '\t' << s.detail
       << '\n';
    all = all && s.pass;
    Json j;
    j["suite"] = s.name;
    j["property"] = s.property;
    j["cases"] = s.cases;
    j["failures"] = s.failures;
    j["pass"] = s.pass;
    j["detail"] = s.detail;
    arr.push_back(j);
  }
  emit(cfg.output, os.str(), out);
  if (!cfg.json_output.empty()) write_json(cfg, cfg.json_output, arr, out);
  return all ? kSuccess : kInternalError;
}

}  // namespace

int run(RunConfig cfg, std::ostream& out, std::ostream& err) {
  auto report = [&](std::string_view kind, const std::string& msg) {
    Json j;
    j["error"] = std::string(kind);
    j["message"] = msg;
    j["command"] = cfg.command;
    err << j.dump() << '\n';
  };
  try {
    apply_environment(cfg);
    const std::string& c = cfg.command;
    if (c == "generate") return cmd_generate(cfg, out);
    if (c == "density") return cmd_density(cfg, out);
    if (c == "discrepancy") return cmd_discrepancy(cfg, out);
    if (c == "vanhove") return cmd_vanhove(cfg, out);
    if (c == "deviant") return cmd_deviant(cfg, out);
    if (c == "reprad") return cmd_reprad(cfg, out);
    if (c == "match") return cmd_match(cfg, out);
    if (c == "nonbd") return cmd_nonbd(cfg, out);
    if (c == "hull") return cmd_hull(cfg, out);
    if (c == "distinguish") return cmd_distinguish(cfg, out);
    if (c == "verify-lemmas") return cmd_verify_lemmas(cfg, out);
    fail(ErrorKind::invalid_parameter, "unknown command '" + c + "'");
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::not_found) {
      Json r;
      r["status"] = "not-found";
      r["reason"] = e.what();
      write_json(cfg, cfg.output, r, out);
      return kSuccess;
    }
    report(to_string(e.kind()), e.what());
    return e.kind() == ErrorKind::internal ? kInternalError : kConfigError;
  } catch (const std::invalid_argument& e) {
    report(to_string(ErrorKind::parse_error), e.what());
    return kConfigError;
  } catch (const std::out_of_range& e) {
    report(to_string(ErrorKind::parse_error), e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    report(to_string(ErrorKind::internal), e.what());
    return kInternalError;
  }
}

}  // namespace aperiodica::cli
