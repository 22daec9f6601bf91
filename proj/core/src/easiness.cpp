#include "partcat/easiness.hpp"

#include <algorithm>
#include <stdexcept>

#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/parallel.hpp"

namespace partcat {

namespace {

void require_exact(const GroupModel& g, const char* what) {
  if (!g.exact()) throw PreconditionError(std::string(what) + ": needs an exact group kind");
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return c;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Kernel of the linear map α ↦ Σ α_i v_i, by incremental elimination that
// tracks the combination behind each echelon row.
std::vector<std::vector<Rational>> kernel(const std::vector<const SparseVector*>& vs) {
  struct Row {
    SparseVector v;
    std::vector<Rational> combo;
  };
  const std::size_t p = vs.size();
  std::vector<Row> rows;
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < p; ++i) {
    SparseVector v = *vs[i];
    std::vector<Rational> combo(p, 0);
    combo[i] = 1;
    bool changed = true;
    while (!v.empty() && changed) {
      changed = false;
      for (const auto& r : rows) {
        const Rational c = v.at(r.v.leading_index());
        if (sgn(c) == 0) continue;
        v.axpy(-c, r.v);
        for (std::size_t j = 0; j < p; ++j) combo[j] -= c * r.combo[j];
        changed = true;
        if (v.empty()) break;
      }
    }
    if (v.empty()) {
      out.push_back(std::move(combo));
      continue;
    }
    const Rational lead = v.leading_value();
    v.scale(1 / lead);
    for (auto& c : combo) c /= lead;
    // keep rows reduced against the new pivot
    for (auto& r : rows) {
      const Rational c = r.v.at(v.leading_index());
      if (sgn(c) == 0) continue;
      r.v.axpy(-c, v);
      for (std::size_t j = 0; j < p; ++j) r.combo[j] -= c * combo[j];
    }
    rows.push_back({std::move(v), std::move(combo)});
  }
  return out;
}

bool full_support(const std::vector<std::vector<Rational>>& ker, std::size_t p) {
  for (std::size_t i = 0; i < p; ++i) {
    bool hit = false;
    for (const auto& k : ker) hit = hit || sgn(k[i]) != 0;
    if (!hit) return false;
  }
  return true;
}

SpanBasis cell_intertwiners(const LinearTable& fix, const ColoredWord& upper,
                            const ColoredWord& lower) {
  return fix.cell(upper, lower);
}

std::vector<std::pair<ColoredWord, ColoredWord>> harvest_cells(std::size_t bound, HarvestMode mode) {
  std::vector<std::pair<ColoredWord, ColoredWord>> out;
  for (const auto& w : table_words(bound, ClosureMode::colored)) {
    if (mode == HarvestMode::fixed_points) {
      out.emplace_back(ColoredWord{}, w);
      continue;
    }
    for (std::size_t k = 0; k <= w.size(); ++k) {
      out.emplace_back(w.slice(0, k).conjugate(), w.slice(k, w.size()));
    }
  }
  return out;
}

nlohmann::json rational_vector(const std::vector<Rational>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

}  // namespace

bool is_homogeneous(const GroupModel& g) {
  if (!g.exact()) return true;
  if (g.kind != GroupKind::Finite) return true;
  const auto all = elements(g);
  const std::size_t m = all.front().m;
  if (g.n < 2) return true;
  auto t = MonomialMatrix::identity(g.n, m);
  std::swap(t.perm[0], t.perm[1]);
  auto c = MonomialMatrix::identity(g.n, m);
  for (std::size_t i = 0; i < g.n; ++i) c.perm[i] = (i + 1) % g.n;
  return std::binary_search(all.begin(), all.end(), t) && std::binary_search(all.begin(), all.end(), c);
}

LinearTable fix_table(const GroupModel& g, std::size_t bound, const FixOptions& options) {
  require_exact(g, "fix_table");
  LinearTable table;
  table.bound = bound;
  table.n = g.n;
  table.mode = ClosureMode::colored;
  const auto words = table_words(bound, ClosureMode::colored);
  using Cells = std::vector<std::pair<ColoredWord, SpanBasis>>;
  Cells cells = parallel_chunks(
      words.size(), Cells{},
      [&](std::size_t lo, std::size_t hi) {
        Cells part;
        for (std::size_t i = lo; i < hi; ++i) {
          part.emplace_back(words[i], *intertwiner_space(g, {}, words[i], options).basis);
        }
        return part;
      },
      [](Cells a, Cells b) {
        for (auto& x : b) a.push_back(std::move(x));
        return a;
      });
  for (auto& [w, basis] : cells) table.cells.emplace(w, std::move(basis));
  return table;
}

EnvelopeTable easy_envelope(const GroupModel& g, std::size_t bound, const EnvelopeOptions& options) {
  EnvelopeTable env;
  env.group = g.name();
  env.n = g.n;
  env.exact = g.exact();
  env.tolerance = g.exact() ? 0 : options.tolerance;
  if (!is_homogeneous(g)) {
    throw PreconditionError("easy_envelope: " + g.name() + " does not contain S_N");
  }
  if (!g.exact()) {
    env.warnings.push_back("homogeneity of " + g.name() + " taken on trust (sampled model)");
  }
  env.table.bound = bound;
  env.table.mode = ClosureMode::colored;
  env.table.status = ClosureStatus::stable_within_bound;
  const auto words = table_words(bound, ClosureMode::colored);
  using Cells = std::vector<std::pair<ColoredWord, std::set<Partition>>>;
  FixOptions fix = options.fix;
  if (!g.exact()) fix.method = FixMethod::sampled;
  Cells cells = parallel_chunks(
      words.size(), Cells{},
      [&](std::size_t lo, std::size_t hi) {
        Cells part;
        for (std::size_t i = lo; i < hi; ++i) {
          const auto space = intertwiner_space(g, {}, words[i], fix);
          std::set<Partition> members;
          for (const auto& pi : enumerate({}, words[i])) {
            const TensorMap t = build_map(pi, g.n);
            const bool in = g.exact() ? space.basis->contains(t) : space.residual(t) < options.tolerance;
            if (in) members.insert(pi);
          }
          part.emplace_back(words[i], std::move(members));
        }
        return part;
      },
      [](Cells a, Cells b) {
        for (auto& x : b) a.push_back(std::move(x));
        return a;
      });
  for (auto& [w, members] : cells) env.table.cells.emplace(w, std::move(members));
  return env;
}

std::optional<TableDifference> envelope_closure_defect(const EnvelopeTable& env) {
  std::vector<Partition> all;
  for (const auto& [w, cell] : env.table.cells) all.insert(all.end(), cell.begin(), cell.end());
  auto closed = close_partitions(all, env.table.bound, env.table.mode, false);
  closed.status = env.table.status;
  return table_difference(closed, env.table);
}

EpCell ep_cell(const SpanBasis& c, std::size_t p, const EpOptions& options) {
  if (p == 0) throw PreconditionError("ep_cell: p must be at least 1");
  const auto& upper = c.upper();
  const auto& lower = c.lower();
  const std::size_t n = c.n();
  EpCell out;
  out.upper = upper;
  out.lower = lower;
  out.p = p;

  const auto all = enumerate(upper, lower);
  std::vector<SparseVector> residual;
  residual.reserve(all.size());
  std::vector<std::size_t> outside;
  for (std::size_t i = 0; i < all.size(); ++i) {
    residual.push_back(c.reduce(build_map(all[i], n).entries()));
    if (residual.back().empty()) {
      out.d1.push_back(all[i]);
    } else {
      outside.push_back(i);
    }
  }
  if (p == 1) {
    for (const auto& pi : out.d1) out.solutions.push_back({{pi}, {{Rational(1)}}});
    out.subsets_examined = all.size();
    return out;
  }

  // A subset meeting D¹ splits into its D¹ part and a smaller subset, so the
  // fast path only scans subsets of the partitions outside D¹.
  const std::vector<std::size_t>* pool = &outside;
  std::vector<std::size_t> every(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) every[i] = i;
  if (!options.skip_inside_d1) pool = &every;
  const double count = binomial(pool->size(), p);
  if (count > static_cast<double>(options.max_subsets)) {
    throw BudgetExceededError("ep_cell: " + std::to_string(static_cast<long double>(count)) +
                              " subsets exceed the budget");
  }
  out.subsets_skipped = static_cast<std::size_t>(binomial(all.size(), p) - count);
  std::vector<const SparseVector*> cols(p);
  for_each_subset(pool->size(), p, [&](const std::vector<std::size_t>& idx) {
    ++out.subsets_examined;
    for (std::size_t j = 0; j < p; ++j) cols[j] = &residual[(*pool)[idx[j]]];
    auto ker = kernel(cols);
    if (ker.empty() || !full_support(ker, p)) return;
    EpSolution sol;
    for (std::size_t j = 0; j < p; ++j) sol.support.push_back(all[(*pool)[idx[j]]]);
    sol.kernel = std::move(ker);
    out.solutions.push_back(std::move(sol));
  });
  return out;
}

EpCell ep_cell(const GroupModel& g, const ColoredWord& upper, const ColoredWord& lower,
               std::size_t p, const EpOptions& options) {
  require_exact(g, "ep_cell");
  return ep_cell(*intertwiner_space(g, upper, lower).basis, p, options);
}

std::vector<TensorMap> ep_maps(const EpCell& cell, std::size_t n) {
  std::vector<TensorMap> out;
  for (const auto& pi : cell.d1) out.push_back(build_map(pi, n));
  if (cell.p == 1) return out;
  for (const auto& sol : cell.solutions) {
    for (const auto& alpha : sol.kernel) {
      TensorMap sum(cell.upper, cell.lower, n);
      for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (sgn(alpha[i]) != 0) sum = add(sum, scaled(alpha[i], build_map(sol.support[i], n)));
      }
      out.push_back(std::move(sum));
    }
  }
  return out;
}

std::string to_string(HarvestMode mode) {
  return mode == HarvestMode::full ? "full" : "fixed_points";
}

std::string to_string(LevelVerdict v) {
  return v == LevelVerdict::equal_within_bound ? "equal_within_bound" : "strictly_smaller";
}

namespace {

LinearTable gp_from_fix(const LinearTable& fix, std::size_t p, std::size_t harvest_bound,
                        std::size_t closure_bound, HarvestMode mode, const EpOptions& options) {
  const std::size_t n = fix.n;
  const auto cells = harvest_cells(harvest_bound, mode);
  using Maps = std::vector<TensorMap>;
  Maps gens = parallel_chunks(
      cells.size(), Maps{},
      [&](std::size_t lo, std::size_t hi) {
        Maps part;
        for (std::size_t i = lo; i < hi; ++i) {
          const auto& [upper, lower] = cells[i];
          const auto cell = ep_cell(cell_intertwiners(fix, upper, lower), p, options);
          for (auto& m : ep_maps(cell, n)) part.push_back(to_one_row(m));
        }
        return part;
      },
      [](Maps a, Maps b) {
        for (auto& x : b) a.push_back(std::move(x));
        return a;
      });
  return close_linear(gens, n, closure_bound, ClosureMode::colored, false);
}

}  // namespace

LinearTable gp_table(const GroupModel& g, std::size_t p, std::size_t harvest_bound,
                     std::size_t closure_bound, HarvestMode mode, const EpOptions& options) {
  require_exact(g, "gp_table");
  if (harvest_bound > closure_bound) {
    throw PreconditionError("gp_table: harvest bound exceeds the closure bound");
  }
  return gp_from_fix(fix_table(g, harvest_bound), p, harvest_bound, closure_bound, mode, options);
}

LevelReport easiness_level_probe(const GroupModel& g, std::size_t p_max, std::size_t harvest_bound,
                                 std::size_t closure_bound, HarvestMode mode,
                                 const EpOptions& options) {
  require_exact(g, "easiness_level_probe");
  if (harvest_bound > closure_bound) {
    throw PreconditionError("easiness_level_probe: harvest bound exceeds the closure bound");
  }
  LevelReport report;
  report.group = g.name();
  report.harvest_bound = harvest_bound;
  report.closure_bound = closure_bound;
  report.mode = mode;
  report.bell_bound = known_bell_bound(g);
  const LinearTable truth = fix_table(g, closure_bound);
  for (std::size_t p = 1; p <= p_max; ++p) {
    LevelEntry e;
    e.p = p;
    e.true_dim = truth.total_dim();
    if (!report.per_p.empty() && report.per_p.back().verdict == LevelVerdict::equal_within_bound) {
      e.gp_dim = e.true_dim;
      e.inferred = true;
      report.per_p.push_back(e);
      continue;
    }
    const LinearTable gp = gp_from_fix(truth, p, harvest_bound, closure_bound, mode, options);
    if (auto bad = table_containment(gp, truth)) {
      throw std::logic_error("easiness_level_probe: C^p escapes the intertwiners at " +
                             bad->lower.str());
    }
    e.gp_dim = gp.total_dim();
    e.witness = table_difference(gp, truth);
    e.verdict = e.witness ? LevelVerdict::strictly_smaller : LevelVerdict::equal_within_bound;
    report.per_p.push_back(std::move(e));
  }
  return report;
}

PresentationReport presentation_level_probe(const GroupModel& g, std::size_t r_max,
                                            std::size_t closure_bound) {
  require_exact(g, "presentation_level_probe");
  PresentationReport report;
  report.group = g.name();
  report.r_max = r_max;
  report.closure_bound = closure_bound;
  const LinearTable truth = fix_table(g, closure_bound);
  for (std::size_t r = 1; r <= std::min(r_max, closure_bound); ++r) {
    std::vector<TensorMap> gens;
    for (const auto& w : all_words(r)) {
      for (auto& m : truth.cells.at(w).maps()) gens.push_back(std::move(m));
    }
    const auto lin = close_linear(gens, g.n, closure_bound, ClosureMode::colored, false);
    auto diff = table_difference(lin, truth);
    report.per_r.push_back(diff);
    if (!diff) {
      report.level = r;
      break;
    }
  }
  return report;
}

std::uint64_t bell_bound(std::size_t r) {
  if (r > 25) throw PreconditionError("bell_bound: B_r overflows 64 bits past r = 25");
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

std::optional<std::uint64_t> known_bell_bound(const GroupModel& g) {
  if (g.kind != GroupKind::HNsd && g.kind != GroupKind::UNd) return std::nullopt;
  const std::size_t r = g.n * g.d;
  if (r > 25) return std::nullopt;
  return bell_bound(r);
}

nlohmann::json to_json(const TableDifference& d) {
  return {{"upper", d.upper.str()}, {"lower", d.lower.str()}, {"witness", d.witness},
          {"detail", d.detail}};
}

nlohmann::json to_json(const EnvelopeTable& env) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [w, cell] : env.table.cells) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : cell) parts.push_back(p.str());
    cells.push_back({{"word", w.str()}, {"count", cell.size()}, {"partitions", parts}});
  }
  nlohmann::json j{{"group", env.group}, {"n", env.n}, {"bound", env.table.bound},
                   {"exact", env.exact}, {"total", env.table.total()}, {"cells", cells},
                   {"warnings", env.warnings}};
  if (!env.exact) j["tolerance"] = env.tolerance;
  return j;
}

nlohmann::json to_json(const EpCell& cell) {
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& s : cell.solutions) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& p : s.support) support.push_back(p.str());
    nlohmann::json ker = nlohmann::json::array();
    for (const auto& k : s.kernel) ker.push_back(rational_vector(k));
    sols.push_back({{"support", support}, {"coefficients", ker}});
  }
  nlohmann::json d1 = nlohmann::json::array();
  for (const auto& p : cell.d1) d1.push_back(p.str());
  return {{"upper", cell.upper.str()}, {"lower", cell.lower.str()}, {"p", cell.p},
          {"d1", d1}, {"solutions", sols}, {"subsets_examined", cell.subsets_examined},
          {"subsets_skipped", cell.subsets_skipped}};
}

nlohmann::json to_json(const LevelReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& e : r.per_p) {
    nlohmann::json j{{"p", e.p}, {"verdict", to_string(e.verdict)}, {"gp_dim", e.gp_dim},
                     {"true_dim", e.true_dim}, {"inferred", e.inferred}};
    if (e.witness) j["witness"] = to_json(*e.witness);
    per.push_back(j);
  }
  nlohmann::json j{{"group", r.group}, {"harvest_bound", r.harvest_bound},
                   {"closure_bound", r.closure_bound}, {"harvest_mode", to_string(r.mode)},
                   {"per_p", per}};
  j["bell_bound"] = r.bell_bound ? nlohmann::json(*r.bell_bound) : nlohmann::json("inf");
  return j;
}

nlohmann::json to_json(const PresentationReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (std::size_t i = 0; i < r.per_r.size(); ++i) {
    nlohmann::json j{{"r", i + 1}, {"equal_within_bound", !r.per_r[i]}};
    if (r.per_r[i]) j["witness"] = to_json(*r.per_r[i]);
    per.push_back(j);
  }
  nlohmann::json j{{"group", r.group}, {"r_max", r.r_max}, {"closure_bound", r.closure_bound},
                   {"per_r", per}};
  j["level"] = r.level ? nlohmann::json(*r.level) : nlohmann::json("none");
  return j;
}

}  // namespace partcat
