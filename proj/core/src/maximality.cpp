#include "partcat/maximality.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "partcat/errors.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/parallel.hpp"

namespace partcat {

namespace {

using Op = CappingStep::Op;

constexpr Op kAllOps[] = {Op::cap_lower,  Op::cap_upper, Op::drop_lower,      Op::drop_upper,
                          Op::rotate_ccw, Op::rotate_cw, Op::rotate_right_up, Op::rotate_right_down};

bool is_cap(Op op) { return op == Op::cap_lower || op == Op::cap_upper || op == Op::drop_lower || op == Op::drop_upper; }

Partition basic_crossing() { return whitened(Partition::crossing(Color::white, Color::white)); }

// positions where the op applies to a partition with k upper and l lower legs
std::size_t op_positions(Op op, std::size_t k, std::size_t l) {
  switch (op) {
    case Op::cap_lower: return l >= 2 ? l - 1 : 0;
    case Op::cap_upper: return k >= 2 ? k - 1 : 0;
    case Op::drop_lower: return l;
    case Op::drop_upper: return k;
    case Op::rotate_ccw:
    case Op::rotate_right_down: return k >= 1 ? 1 : 0;
    case Op::rotate_cw:
    case Op::rotate_right_up: return l >= 1 ? 1 : 0;
  }
  return 0;
}

}  // namespace

std::string to_string(CappingStep::Op op) {
  switch (op) {
    case Op::cap_lower: return "cap_lower";
    case Op::cap_upper: return "cap_upper";
    case Op::drop_lower: return "drop_lower";
    case Op::drop_upper: return "drop_upper";
    case Op::rotate_ccw: return "rotate_ccw";
    case Op::rotate_cw: return "rotate_cw";
    case Op::rotate_right_up: return "rotate_right_up";
    case Op::rotate_right_down: return "rotate_right_down";
  }
  return "?";
}

CappingStep::Op capping_op_from_string(const std::string& s) {
  for (Op op : kAllOps) {
    if (to_string(op) == s) return op;
  }
  throw ParseError("unknown capping step \"" + s + "\"");
}

Partition cap_below(std::size_t legs, std::size_t i) {
  if (i + 1 >= legs) throw PreconditionError("cap_below: position out of range");
  std::vector<int> labels(2 * legs - 2);
  for (std::size_t j = 0, out = 0; j < legs; ++j) {
    labels[j] = static_cast<int>(j);
    if (j == i + 1) {
      labels[j] = static_cast<int>(i);
    } else if (j != i) {
      labels[legs + out++] = static_cast<int>(j);
    }
  }
  return Partition(ColoredWord::white(legs), ColoredWord::white(legs - 2), labels);
}

Partition drop_below(std::size_t legs, std::size_t i) {
  if (i >= legs) throw PreconditionError("drop_below: position out of range");
  std::vector<int> labels(2 * legs - 1);
  for (std::size_t j = 0, out = 0; j < legs; ++j) {
    labels[j] = static_cast<int>(j);
    if (j != i) labels[legs + out++] = static_cast<int>(j);
  }
  return Partition(ColoredWord::white(legs), ColoredWord::white(legs - 1), labels);
}

std::pair<Partition, int> apply_step(const Partition& pi, CappingStep::Op op, std::size_t position) {
  const std::size_t k = pi.upper().size(), l = pi.lower().size();
  if (position >= std::max<std::size_t>(op_positions(op, k, l), is_cap(op) ? 0 : 1) ||
      op_positions(op, k, l) == 0) {
    throw PreconditionError("capping step " + to_string(op) + " does not apply to " + pi.str());
  }
  const Partition p = whitened(pi);
  switch (op) {
    case Op::cap_lower: {
      auto c = compose(p, cap_below(l, position));
      return {whitened(c.result), c.loops};
    }
    case Op::drop_lower: {
      auto c = compose(p, drop_below(l, position));
      return {whitened(c.result), c.loops};
    }
    case Op::cap_upper: {
      auto c = compose(whitened(involution(cap_below(k, position))), p);
      return {whitened(c.result), c.loops};
    }
    case Op::drop_upper: {
      auto c = compose(whitened(involution(drop_below(k, position))), p);
      return {whitened(c.result), c.loops};
    }
    case Op::rotate_ccw: return {whitened(rotate_ccw(p)), 0};
    case Op::rotate_cw: return {whitened(rotate_cw(p)), 0};
    case Op::rotate_right_up: return {whitened(rotate_right_up(p)), 0};
    case Op::rotate_right_down: return {whitened(rotate_right_down(p)), 0};
  }
  return {p, 0};
}

CappingCertificate capping_search(const Partition& pi, const CappingOptions& options) {
  const Partition start = whitened(pi);
  if (crossing_count(start) == 0) throw PreconditionError("capping_search: " + pi.str() + " is noncrossing");
  CappingCertificate cert;
  cert.start = start;
  cert.depth_limit = options.max_caps;
  const Partition goal = basic_crossing();

  using Key = std::tuple<std::size_t, int, std::size_t, std::string>;
  auto key = [](std::size_t caps, const Partition& p) {
    return Key{caps, crossing_count(p), p.legs(), p.str()};
  };
  struct Visit {
    std::size_t caps;
    std::optional<Partition> parent;
    CappingStep step;
  };
  std::map<Partition, Visit> seen;
  std::set<Key> frontier;
  std::map<std::string, Partition> by_text;
  seen.emplace(start, Visit{0, std::nullopt, {}});
  frontier.insert(key(0, start));
  by_text.emplace(start.str(), start);
  std::set<Partition> done;

  while (!frontier.empty()) {
    const Key top = *frontier.begin();
    frontier.erase(frontier.begin());
    const Partition cur = by_text.at(std::get<3>(top));
    const std::size_t caps = std::get<0>(top);
    if (done.count(cur) || seen.at(cur).caps != caps) continue;
    done.insert(cur);
    if (cur == goal) {
      std::vector<CappingStep> rev;
      for (Partition at = cur; seen.at(at).parent; at = *seen.at(at).parent) rev.push_back(seen.at(at).step);
      cert.steps.assign(rev.rbegin(), rev.rend());
      cert.end = cur;
      cert.found = true;
      return cert;
    }
    const std::size_t k = cur.upper().size(), l = cur.lower().size();
    for (Op op : kAllOps) {
      if (!options.singletons && (op == Op::drop_lower || op == Op::drop_upper)) continue;
      const std::size_t cost = caps + (is_cap(op) ? 1 : 0);
      if (cost > options.max_caps) continue;
      for (std::size_t pos = 0; pos < op_positions(op, k, l); ++pos) {
        auto [next, loops] = apply_step(cur, op, pos);
        if (crossing_count(next) == 0) continue;
        auto it = seen.find(next);
        if (it != seen.end() && it->second.caps <= cost) continue;
        CappingStep step{op, pos, loops, next};
        if (it == seen.end()) {
          seen.emplace(next, Visit{cost, cur, step});
        } else {
          it->second = Visit{cost, cur, step};
        }
        by_text.emplace(next.str(), next);
        frontier.insert(key(cost, next));
      }
    }
  }
  cert.end = start;
  return cert;
}

std::optional<std::string> replay(const CappingCertificate& cert) {
  Partition cur = whitened(cert.start);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    std::pair<Partition, int> r;
    try {
      r = apply_step(cur, s.op, s.position);
    } catch (const PreconditionError& e) {
      return "step " + std::to_string(i + 1) + ": " + e.what();
    }
    if (r.first != s.result) {
      return "step " + std::to_string(i + 1) + ": got " + r.first.str() + ", recorded " + s.result.str();
    }
    if (r.second != s.loops) return "step " + std::to_string(i + 1) + ": loop count differs";
    if (crossing_count(r.first) == 0) return "step " + std::to_string(i + 1) + ": no crossing left";
    cur = r.first;
  }
  if (cur != cert.end) return "end differs: got " + cur.str() + ", recorded " + cert.end.str();
  if (cert.found && cur != basic_crossing()) return "end is not the basic crossing";
  return std::nullopt;
}

std::string to_string(Order2Verdict v) { return v == Order2Verdict::reaches_span_E ? "reaches_span_E" : "stuck"; }

namespace {

ClosureMode mode_for(const CategoryName& d, const CategoryName& e) {
  return d.colored() || e.colored() ? ClosureMode::colored : ClosureMode::real;
}

std::vector<TensorMap> category_maps(const CategoryName& cat, std::size_t n, std::size_t bound, ClosureMode mode) {
  std::vector<TensorMap> out;
  for (const auto& w : table_words(bound, mode)) {
    for (const auto& p : enumerate({}, w)) {
      if (is_member(p, cat)) out.push_back(build_map(p, n));
    }
  }
  return out;
}

void check_pair(const CategoryName& d, const CategoryName& e, const Partition& pi, const Partition& sigma,
                const Rational& alpha, const Rational& beta) {
  if (sgn(alpha) == 0 || sgn(beta) == 0) throw PreconditionError("order2_check: α and β must be nonzero");
  if (pi.upper() != sigma.upper() || pi.lower() != sigma.lower()) {
    throw PreconditionError("order2_check: π and σ live in different cells");
  }
  if (!is_member(pi, e) || !is_member(sigma, e)) throw PreconditionError("order2_check: π or σ is outside E");
  if (is_member(pi, d) && is_member(sigma, d)) throw PreconditionError("order2_check: π and σ are both in D");
  if (pi == sigma && alpha + beta == 0) throw PreconditionError("order2_check: the combination vanishes");
}

Order2Result order2_with(const std::vector<TensorMap>& d_maps, const LinearTable& target, const Partition& pi,
                         const Partition& sigma, const Rational& alpha, const Rational& beta, std::size_t n,
                         std::size_t bound, ClosureMode mode) {
  std::vector<TensorMap> gens = d_maps;
  const TensorMap comb = add(scaled(alpha, build_map(pi, n)), scaled(beta, build_map(sigma, n)));
  gens.push_back(to_one_row(comb));
  const LinearTable closed = close_linear(gens, n, bound, mode, false);
  if (auto bad = table_containment(closed, target)) {
    throw std::logic_error("order2_check: closure leaves span(E) at " + bad->lower.str());
  }
  Order2Result r;
  r.closure_dim = closed.total_dim();
  r.target_dim = target.total_dim();
  r.witness = table_difference(closed, target);
  r.verdict = r.witness ? Order2Verdict::stuck : Order2Verdict::reaches_span_E;
  return r;
}

}  // namespace

Order2Result order2_check(const CategoryName& d, const CategoryName& e, const Partition& pi, const Partition& sigma,
                          const Rational& alpha, const Rational& beta, std::size_t n, std::size_t bound) {
  check_pair(d, e, pi, sigma, alpha, beta);
  if (pi.legs() > bound) throw PreconditionError("order2_check: π has more legs than the bound");
  const ClosureMode mode = mode_for(d, e);
  const LinearTable target = span_table(filter_table(e, bound, mode), n);
  return order2_with(category_maps(d, n, bound, mode), target, pi, sigma, alpha, beta, n, bound, mode);
}

std::string to_string(Series s) {
  switch (s) {
    case Series::S: return "S";
    case Series::O: return "O";
    case Series::B: return "B";
    case Series::H: return "H";
  }
  return "?";
}

Series series_from_string(const std::string& s) {
  for (Series x : {Series::S, Series::O, Series::B, Series::H}) {
    if (to_string(x) == s) return x;
  }
  throw ParseError("unknown series \"" + s + "\" (expected S, O, B or H)");
}

std::pair<CategoryName, CategoryName> series_categories(Series s) {
  using T = CategoryName::Tag;
  switch (s) {
    case Series::S: return {{T::NC}, {T::P}};
    case Series::O: return {{T::NC2Real}, {T::P2}};
    case Series::B: return {{T::NC12}, {T::P12}};
    case Series::H: return {{T::NCeven}, {T::Peven}};
  }
  throw PreconditionError("series_categories: unknown series");
}

std::vector<std::pair<Rational, Rational>> default_coefficients() {
  return {{1, 1}, {1, -1}, {2, -3}, {5, 7}, {1, 1000}};
}

SeriesReport series_runner(Series series, std::size_t n, std::size_t bound,
                           const std::vector<std::pair<Rational, Rational>>& coefficients, std::size_t pair_budget,
                           std::uint64_t seed) {
  const auto [d, e] = series_categories(series);
  const ClosureMode mode = mode_for(d, e);
  SeriesReport report;
  report.series = series;
  report.n = n;
  report.bound = bound;
  report.seed = seed;
  report.coefficients = coefficients;
  report.expected_inconclusive = series == Series::H;
  for (const auto& [a, b] : coefficients) {
    if (sgn(a) == 0 || sgn(b) == 0) throw PreconditionError("series_runner: coefficients must be nonzero");
  }

  std::vector<std::pair<Partition, Partition>> pairs;
  for (std::size_t legs = 0; legs <= bound; ++legs) {
    for (std::size_t k = 0; k <= legs; ++k) {
      std::vector<Partition> cell;
      for (const auto& p : enumerate(ColoredWord::white(k), ColoredWord::white(legs - k))) {
        if (is_member(p, e)) cell.push_back(p);
      }
      for (const auto& p : cell) {
        for (const auto& s : cell) {
          if (p != s && !(is_member(p, d) && is_member(s, d))) pairs.emplace_back(p, s);
        }
      }
    }
  }
  report.pairs_available = pairs.size();
  std::vector<std::pair<Partition, Partition>> used;
  if (pairs.size() <= pair_budget) {
    used = pairs;
  } else {
    std::mt19937_64 rng(seed);
    std::sample(pairs.begin(), pairs.end(), std::back_inserter(used), pair_budget, rng);
  }
  report.pairs_used = used.size();

  const LinearTable target = span_table(filter_table(e, bound, mode), n);
  const auto d_maps = category_maps(d, n, bound, mode);
  std::vector<SeriesInstance> todo;
  for (const auto& [p, s] : used) {
    for (const auto& [a, b] : coefficients) todo.push_back({p, s, a, b, {}});
  }
  using Done = std::vector<SeriesInstance>;
  report.instances = parallel_chunks(
      todo.size(), Done{},
      [&](std::size_t lo, std::size_t hi) {
        Done part;
        for (std::size_t i = lo; i < hi; ++i) {
          SeriesInstance inst = todo[i];
          inst.result = order2_with(d_maps, target, inst.pi, inst.sigma, inst.alpha, inst.beta, n, bound, mode);
          part.push_back(std::move(inst));
        }
        return part;
      },
      [](Done a, Done b) {
        for (auto& x : b) a.push_back(std::move(x));
        return a;
      });
  for (const auto& inst : report.instances) {
    if (inst.result.verdict == Order2Verdict::stuck) ++report.stuck;
  }
  return report;
}

nlohmann::json to_json(const CappingCertificate& cert) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : cert.steps) {
    steps.push_back({{"op", to_string(s.op)}, {"position", s.position}, {"loops", s.loops}, {"result", s.result.str()}});
  }
  return {{"start", cert.start.str()}, {"end", cert.end.str()}, {"found", cert.found},
          {"depth_limit", cert.depth_limit}, {"steps", steps}};
}

CappingCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    CappingCertificate cert;
    cert.start = Partition::parse(j.at("start").get<std::string>());
    cert.end = Partition::parse(j.at("end").get<std::string>());
    cert.found = j.value("found", true);
    cert.depth_limit = j.value("depth_limit", std::size_t{0});
    for (const auto& s : j.at("steps")) {
      cert.steps.push_back({capping_op_from_string(s.at("op").get<std::string>()), s.at("position").get<std::size_t>(),
                            s.value("loops", 0), Partition::parse(s.at("result").get<std::string>())});
    }
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
}

nlohmann::json to_json(const Order2Result& r) {
  nlohmann::json j{{"verdict", to_string(r.verdict)}, {"closure_dim", r.closure_dim}, {"target_dim", r.target_dim}};
  if (r.witness) {
    j["witness"] = {{"upper", r.witness->upper.str()}, {"lower", r.witness->lower.str()},
                    {"witness", r.witness->witness}, {"detail", r.witness->detail}};
  }
  return j;
}

nlohmann::json to_json(const SeriesReport& r) {
  const auto [d, e] = series_categories(r.series);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [a, b] : r.coefficients) coeffs.push_back({a.get_str(), b.get_str()});
  nlohmann::json inst = nlohmann::json::array();
  for (const auto& i : r.instances) {
    nlohmann::json j = to_json(i.result);
    j["pi"] = i.pi.str();
    j["sigma"] = i.sigma.str();
    j["alpha"] = i.alpha.get_str();
    j["beta"] = i.beta.get_str();
    inst.push_back(j);
  }
  return {{"series", to_string(r.series)},
          {"D", d.str()},
          {"E", e.str()},
          {"n", r.n},
          {"bound", r.bound},
          {"seed", r.seed},
          {"pairs_available", r.pairs_available},
          {"pairs_used", r.pairs_used},
          {"coefficients", coeffs},
          {"stuck", r.stuck},
          {"expected_inconclusive", r.expected_inconclusive},
          {"instances", inst}};
}

}  // namespace partcat
