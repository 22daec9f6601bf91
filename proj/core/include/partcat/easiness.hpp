#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "partcat/categories.hpp"
#include "partcat/groups.hpp"

namespace partcat {

/// S_N ⊂ G, checked on the elements for exact kinds. Sampled kinds are taken
/// on trust (returns true).
bool is_homogeneous(const GroupModel& g);

/// The true intertwiner table: cell w holds Fix(u^{⊗w}) for every one-row
/// word with at most `bound` legs. Exact kinds only.
LinearTable fix_table(const GroupModel& g, std::size_t bound, const FixOptions& options = {});

/// D¹: the partitions whose maps are intertwiners, cell by cell in one-row
/// form.
struct EnvelopeTable {
  std::string group;
  std::size_t n = 0;
  bool exact = true;
  double tolerance = 0;  ///< residual cut for sampled kinds
  PartitionTable table;
  std::vector<std::string> warnings;
};

struct EnvelopeOptions {
  FixOptions fix;
  double tolerance = 1e-6;  ///< sampled kinds: accept π when residual < tolerance
};

/// Throws PreconditionError for a finite model that is not homogeneous.
EnvelopeTable easy_envelope(const GroupModel& g, std::size_t bound,
                            const EnvelopeOptions& options = {});

/// Closure of the envelope cells within the bound; nullopt when it adds
/// nothing (the envelope is a category within the bound).
std::optional<TableDifference> envelope_closure_defect(const EnvelopeTable& env);

/// A p-subset of partitions with its solution space: every vector in
/// `kernel` gives Σ α_i T_{π_i} ∈ C, and together they reach every index
/// (the subset is genuinely used).
struct EpSolution {
  std::vector<Partition> support;
  std::vector<std::vector<Rational>> kernel;
};

struct EpCell {
  ColoredWord upper, lower;
  std::size_t p = 0;
  std::vector<Partition> d1;
  std::vector<EpSolution> solutions;
  std::size_t subsets_examined = 0;
  std::size_t subsets_skipped = 0;  ///< fast path: subsets inside D¹
};

struct EpOptions {
  bool skip_inside_d1 = true;
  std::size_t max_subsets = 2'000'000;
};

/// E^p(upper, lower): at p = 1 the solutions are (1, π) for π ∈ D¹; for
/// p ≥ 2 the p-subsets with a full-support solution. Exact kinds only.
EpCell ep_cell(const GroupModel& g, const ColoredWord& upper, const ColoredWord& lower,
               std::size_t p, const EpOptions& options = {});
/// Same with the intertwiner space supplied (in the cell's own context).
EpCell ep_cell(const SpanBasis& intertwiners, std::size_t p, const EpOptions& options = {});

/// Maps spanned by an E^p cell: the D¹ maps and every Σ α_i T_{π_i}.
std::vector<TensorMap> ep_maps(const EpCell& cell, std::size_t n);

enum class HarvestMode {
  full,         ///< every (k, l) with |k| + |l| ≤ harvest bound
  fixed_points  ///< only the cells (∅, w)
};

std::string to_string(HarvestMode mode);

/// C^p: close_linear over all E^p harvests with |k|+|l| ≤ harvest_bound.
LinearTable gp_table(const GroupModel& g, std::size_t p, std::size_t harvest_bound,
                     std::size_t closure_bound, HarvestMode mode = HarvestMode::fixed_points,
                     const EpOptions& options = {});

enum class LevelVerdict { equal_within_bound, strictly_smaller };

std::string to_string(LevelVerdict v);

struct LevelEntry {
  std::size_t p = 0;
  LevelVerdict verdict = LevelVerdict::equal_within_bound;
  std::optional<TableDifference> witness;
  std::size_t gp_dim = 0, true_dim = 0;  ///< total dimensions over all cells
  bool inferred = false;  ///< copied from a smaller p (C^p ⊂ C^{p+1} ⊂ C)
};

struct LevelReport {
  std::string group;
  std::size_t harvest_bound = 0, closure_bound = 0;
  HarvestMode mode = HarvestMode::fixed_points;
  std::vector<LevelEntry> per_p;
  std::optional<std::uint64_t> bell_bound;  ///< nullopt stands for ∞
};

LevelReport easiness_level_probe(const GroupModel& g, std::size_t p_max, std::size_t harvest_bound,
                                 std::size_t closure_bound,
                                 HarvestMode mode = HarvestMode::fixed_points,
                                 const EpOptions& options = {});

struct PresentationReport {
  std::string group;
  std::size_t r_max = 0, closure_bound = 0;
  std::optional<std::size_t> level;  ///< smallest r within bound, or none
  std::vector<std::optional<TableDifference>> per_r;  ///< index r-1
};

PresentationReport presentation_level_probe(const GroupModel& g, std::size_t r_max,
                                            std::size_t closure_bound);

/// B_r. Throws PreconditionError past r = 25 (64-bit overflow).
std::uint64_t bell_bound(std::size_t r);

/// Bell bound of the presentation bound N·d for HNsd and UNd; nullopt otherwise.
std::optional<std::uint64_t> known_bell_bound(const GroupModel& g);

nlohmann::json to_json(const EnvelopeTable& env);
nlohmann::json to_json(const EpCell& cell);
nlohmann::json to_json(const LevelReport& r);
nlohmann::json to_json(const PresentationReport& r);
nlohmann::json to_json(const TableDifference& d);

}  // namespace partcat
