#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aperiodica::cli {

// Everything a command reads. Output paths and the worker count do not
// affect artifacts and are left out of the hash.
struct RunConfig {
  std::string command;
  std::string source = "fib";
  std::string source2 = "latticeZ";
  std::string window;
  std::string region;
  std::string patch;
  std::string rho = "exact";
  std::string c;  // single value or comma list
  std::size_t budget = 4'000'000;
  std::string eps = "1";
  std::string family = "centered";
  std::size_t max_i = 20;
  std::size_t dim = 1;
  std::string selection = "max";
  std::string min_length = "8";
  std::string robust_ell;
  int sign = 0;
  std::string word;
  std::string ell1 = "1";
  std::string margin = "1";
  std::string left, right;
  std::string tower_a, tower_b;
  std::size_t level = 1;
  double threshold = 1e-2;
  std::uint64_t seed = 7;
  std::size_t workers = 1;
  std::string output;
  std::string json_output;
};

nlohmann::ordered_json to_json(const RunConfig& cfg);
// FNV-1a over the canonical JSON of the hashed fields, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);
// APERIODICA_WORKERS overrides the worker count.
void apply_environment(RunConfig& cfg);

std::vector<std::string> split_list(const std::string& text, char sep = ',');

}  // namespace aperiodica::cli
