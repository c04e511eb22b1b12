#pragma once

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/pointsets.hpp"
#include "aperiodica/search.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aperiodica {

enum class Letter { D, N };

struct TowerConfig {
  Scalar rho;
  std::vector<Scalar> c;  // deviance level per tower level
  Scalar ell1 = Scalar(1);
  // ell_{i+1} = 2 max(R_rep(D_i'), R_rep(N_i')) + margin
  Scalar margin = Scalar(1);
  Scalar base_min_length = Scalar(8);
  // Search window per level; the last one is reused for deeper levels.
  std::vector<Region> windows;
  std::size_t budget = 4'000'000;
  // Repetitivity scans cover center +- factor * patch length.
  Scalar rep_scan_factor = Scalar(8);
  std::size_t robust_evaluations = 4000;
  std::size_t workers = 1;
};

// Word-independent part of the construction: the deviant regions D_i', their
// opposite translates N_i' = D_i' - y_i and the shift tolerances ell_i.
struct SkeletonLevel {
  Scalar c, ell, min_length;
  DeviantFind d_find;
  Scalar y;
  Region d_region, n_region;
  DiscrepancyReport n_report;
  std::optional<RepetitivityResult> rep_d, rep_n;
};

struct TowerSkeleton {
  SourcePtr source;
  TowerConfig config;
  std::vector<SkeletonLevel> levels;
  Scalar anchor;  // point of S nearest the center of D_1'
  bool complete = false;
  std::optional<std::size_t> failure_level;  // 1-based
  std::string failure_reason;
};

TowerSkeleton build_skeleton(const SourcePtr& S, std::size_t depth, const TowerConfig& config);

struct TowerLevel {
  std::size_t index = 0;  // 1-based
  Letter letter = Letter::D;
  Scalar c, ell;
  Region support;  // in tower coordinates
  Scalar offset;   // points = (S - offset) cap support
  std::vector<Scalar> points;
  DiscrepancyReport report;
  int d_sign = 0;  // sign of the D-side discrepancy at this level
};

struct PatchTower {
  std::string word;
  SourcePtr source;
  Scalar rho;
  std::vector<Scalar> c;
  std::vector<Scalar> ell;
  std::vector<TowerLevel> levels;
  bool complete = false;
  std::optional<std::size_t> failure_level;
  std::string failure_reason;
  // post-construction checks
  bool nested = false;
  bool deviance_persists = false;
};

PatchTower instantiate(const TowerSkeleton& skeleton, std::string_view word);
PatchTower build_tower(const SourcePtr& S, std::string_view word, const TowerConfig& config);

// Re-derives the nesting and deviance checks from the stored levels.
void verify_tower(PatchTower& tower);

struct HullElementWindow {
  std::string word;
  Region support;
  std::vector<Scalar> points;
  Scalar recenter_shift;
};

HullElementWindow emit_hull_element(const PatchTower& tower);

struct DistinguishEvidence {
  std::size_t level = 0;
  bool first_is_d = true;
  Region region;  // common comparison region in tower coordinates
  Scalar delta;   // shift applied to the D-side support
  Scalar ell;
  std::size_t count_d = 0, count_n = 0;
  Scalar expected, disc_d, disc_n;
  double ratio = 0.0;
  std::optional<Scalar> ratio_exact;
  Scalar c;
  bool pass = false;
};

// Towers whose words differ at letter `level` (1-based): counts over the
// N-side support, taken in each tower's level frame, differ by more than
// 0.9 c mu(A^{+1}).
DistinguishEvidence distinguish(const PatchTower& u, const PatchTower& v, std::size_t level);

std::string_view to_string(Letter l);

}  // namespace aperiodica
