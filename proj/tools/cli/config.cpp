#include "config.hpp"

#include <aperiodica/error.hpp>

#include <cstdio>
#include <cstdlib>

namespace aperiodica::cli {

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["source"] = c.source;
  j["source2"] = c.source2;
  j["window"] = c.window;
  j["region"] = c.region;
  j["patch"] = c.patch;
  j["rho"] = c.rho;
  j["c"] = c.c;
  j["budget"] = c.budget;
  j["eps"] = c.eps;
  j["family"] = c.family;
  j["max_i"] = c.max_i;
  j["dim"] = c.dim;
  j["selection"] = c.selection;
  j["min_length"] = c.min_length;
  j["robust_ell"] = c.robust_ell;
  j["sign"] = c.sign;
  j["word"] = c.word;
  j["ell1"] = c.ell1;
  j["margin"] = c.margin;
  j["left"] = c.left;
  j["right"] = c.right;
  j["tower_a"] = c.tower_a;
  j["tower_b"] = c.tower_b;
  j["level"] = c.level;
  j["threshold"] = c.threshold;
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_environment(RunConfig& cfg) {
  if (const char* w = std::getenv("APERIODICA_WORKERS"); w && *w) {
    char* end = nullptr;
    unsigned long v = std::strtoul(w, &end, 10);
    require(end && *end == '\0' && v >= 1, ErrorKind::invalid_parameter,
            "APERIODICA_WORKERS must be a positive integer");
    cfg.workers = v;
  }
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace aperiodica::cli
