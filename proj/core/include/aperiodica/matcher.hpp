#pragma once

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/geometry.hpp"
#include "aperiodica/pointsets.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace aperiodica {

// Maximum bipartite matching on an explicit graph.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t n_left, std::size_t n_right) : adj_(n_left), n_right_(n_right) {}
  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(static_cast<std::uint32_t>(v)); }
  std::size_t left_size() const { return adj_.size(); }
  std::size_t right_size() const { return n_right_; }
  const std::vector<std::uint32_t>& neighbors(std::size_t u) const { return adj_[u]; }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t n_right_;
};

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

// match[u] is the right vertex matched to u, or kUnmatched.
std::vector<std::size_t> hopcroft_karp(const BipartiteGraph& g);

struct MatchInstance {
  std::vector<Point> left, right;
};

enum class MatchStatus { perfect, defect, witness };
std::string_view to_string(MatchStatus s);

// A set of vertices on one side whose neighbourhood at threshold t is smaller
// than the set.
struct HallWitness {
  enum class Side { left, right } side = Side::left;
  std::vector<std::size_t> members;
  std::vector<std::size_t> neighbors;
  Scalar threshold_sq;
};

struct MatchOutcome {
  MatchStatus status = MatchStatus::perfect;
  Scalar bottleneck_sq;
  std::optional<Scalar> bottleneck;  // exact distance in 1D
  double bottleneck_value = 0.0;
  std::vector<std::size_t> matching;
  std::size_t defect_count = 0;
  std::optional<HallWitness> witness;
  // Hall violation at the next smaller candidate threshold.
  std::optional<HallWitness> certificate;
  bool fast_path = false;
};

struct MatchOptions {
  // Decide only whether a matching with displacement <= max_threshold exists.
  std::optional<Scalar> max_threshold;
  bool certify = true;
  bool force_general = false;
  // Cross-check the 1D sorted-order matching against the general search.
  bool verify_fast_path = false;
};

MatchOutcome bottleneck_match(const MatchInstance& inst, const MatchOptions& opts = {});

std::optional<HallWitness> hall_witness(const MatchInstance& inst, const Scalar& t);

enum class GrowthVerdict { grows, bounded };
std::string_view to_string(GrowthVerdict v);

struct NonBdEntry {
  std::size_t index = 0;
  std::size_t count1 = 0, count2 = 0;
  Scalar difference;
  TubeMeasure tube1;
  double ratio = 0.0;
  std::optional<Scalar> ratio_exact;
};

struct NonBdResult {
  std::vector<NonBdEntry> entries;
  GrowthVerdict verdict = GrowthVerdict::bounded;
  VanHoveDiagnostics van_hove;
};

// |#(A_i cap S1) - #(A_i cap S2)| / mu(A_i^{+1}). "grows" when the last ratio
// exceeds 4x the first nonzero one and the running maximum rises at three or
// more indices.
NonBdResult non_bd_ratio(const PointSource& S1, const PointSource& S2, std::span<const Region> sequence,
                         double van_hove_threshold = 1e-2);

struct LatticeScanVerdict {
  bool violated = false;
  std::optional<DiscrepancyReport> witness;
  double sup_ratio = 0.0;
  std::optional<Region> sup_region;
  std::size_t windows_scanned = 0;
};

// Looks for a c-deviant region, which rules out bounded distance to any
// lattice of density rho.
LatticeScanVerdict lattice_bd_scan(const PointSource& S, const Scalar& rho, const Scalar& c,
                                   std::span<const Region> windows, std::size_t budget);

}  // namespace aperiodica
