#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "partcat/categories.hpp"
#include "partcat/category_name.hpp"
#include "partcat/partition.hpp"

namespace partcat {

/// Capping works in the real (uncolored) setting: every snapshot is whitened.
struct CappingStep {
  enum class Op { cap_lower, cap_upper, drop_lower, drop_upper, rotate_ccw, rotate_cw, rotate_right_up, rotate_right_down };
  Op op = Op::rotate_ccw;
  std::size_t position = 0;  ///< first capped leg (caps) or dropped leg, within its row
  int loops = 0;             ///< closed components erased by the composition
  Partition result;
};

std::string to_string(CappingStep::Op op);
CappingStep::Op capping_op_from_string(const std::string& s);

struct CappingCertificate {
  Partition start;
  std::vector<CappingStep> steps;
  Partition end;  ///< the basic crossing in P(oo, oo) when found
  bool found = false;
  std::size_t depth_limit = 0;
};

struct CappingOptions {
  std::size_t max_caps = 8;   ///< caps and drops, rotations are free
  bool singletons = true;     ///< allow dropping a leg through a singleton (categories with singletons)
};

/// Semicircle capping: caps (composition with ∩ / ∪ on two adjacent legs),
/// optional singleton drops and rotations, keeping at least one crossing,
/// until the basic crossing is reached. Search is uniform-cost in the number
/// of caps, ties broken by crossing count, then leg count, then text order.
/// Throws PreconditionError when π is noncrossing.
CappingCertificate capping_search(const Partition& pi, const CappingOptions& options = {});

/// The partition in P(upper, lower) that caps (or drops) the lower legs of a
/// row: identity strands with legs i, i+1 joined (cap) or leg i alone (drop).
Partition cap_below(std::size_t legs, std::size_t i);
Partition drop_below(std::size_t legs, std::size_t i);

/// Applies one step to a (whitened) partition; returns the result and the
/// loop count of the composition.
std::pair<Partition, int> apply_step(const Partition& pi, CappingStep::Op op, std::size_t position);

/// Re-runs the steps. nullopt when every snapshot and the end match and every
/// intermediate keeps a crossing; otherwise a description of the first problem.
std::optional<std::string> replay(const CappingCertificate& cert);

enum class Order2Verdict { reaches_span_E, stuck };

std::string to_string(Order2Verdict v);

struct Order2Result {
  Order2Verdict verdict = Order2Verdict::stuck;
  std::optional<TableDifference> witness;
  std::size_t closure_dim = 0, target_dim = 0;
};

/// Closure of span(D) ∪ {α T_π + β T_σ} at size n within the bound, compared
/// with span(E). Real mode when both names ignore colors. Throws
/// PreconditionError for π or σ outside E, both in D, different contexts,
/// α or β zero, or a vanishing combination.
Order2Result order2_check(const CategoryName& d, const CategoryName& e, const Partition& pi,
                          const Partition& sigma, const Rational& alpha, const Rational& beta,
                          std::size_t n, std::size_t bound);

enum class Series { S, O, B, H };

std::string to_string(Series s);
Series series_from_string(const std::string& s);
/// (D, E) for the series: S = (NC, P), O = (NC2Real, P2), B = (NC12, P12),
/// H = (NCeven, Peven).
std::pair<CategoryName, CategoryName> series_categories(Series s);

struct SeriesInstance {
  Partition pi, sigma;
  Rational alpha, beta;
  Order2Result result;
};

struct SeriesReport {
  Series series = Series::S;
  std::size_t n = 0, bound = 0;
  std::uint64_t seed = 0;
  std::size_t pairs_available = 0, pairs_used = 0;
  std::vector<std::pair<Rational, Rational>> coefficients;
  std::vector<SeriesInstance> instances;
  std::size_t stuck = 0;
  bool expected_inconclusive = false;  ///< H: no order-2 statement to compare with
};

std::vector<std::pair<Rational, Rational>> default_coefficients();

/// Pairs (π, σ) with π ≠ σ in a common cell E(k, l), |k|+|l| ≤ bound, not both
/// in D; all of them when they fit the budget, else a seeded sample kept in
/// enumeration order. Every pair is checked with every coefficient pair.
SeriesReport series_runner(Series series, std::size_t n, std::size_t bound,
                           const std::vector<std::pair<Rational, Rational>>& coefficients,
                           std::size_t pair_budget, std::uint64_t seed);

nlohmann::json to_json(const CappingCertificate& cert);
CappingCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Order2Result& r);
nlohmann::json to_json(const SeriesReport& r);

}  // namespace partcat
