#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "partcat/easiness.hpp"
#include "partcat/errors.hpp"
#include "partcat/halflib.hpp"
#include "partcat/json_io.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/maximality.hpp"
#include "partcat/parallel.hpp"

namespace partcat::cli {

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// one partition per line in the text format, '#' starts a comment
std::vector<Partition> read_partitions(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<Partition> out;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto a = line.find_first_not_of(" \t\r"), b = line.find_last_not_of(" \t\r");
    if (a == std::string::npos) continue;
    out.push_back(Partition::parse(line.substr(a, b - a + 1)));
  }
  return out;
}

Rational parse_rational(const std::string& s) {
  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational number: \"" + s + "\"");
  }
}

// "1:1,1:-1,2/3:5"
std::vector<std::pair<Rational, Rational>> parse_coefficients(const std::string& list) {
  std::vector<std::pair<Rational, Rational>> out;
  std::istringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("coefficient pair needs α:β, got \"" + item + "\"");
    out.emplace_back(parse_rational(item.substr(0, colon)), parse_rational(item.substr(colon + 1)));
  }
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

std::pair<std::size_t, std::size_t> parse_bounds(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) {
      const auto b = std::stoul(s);
      return {b, b};
    }
    return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw ParseError("bounds must be H,C, got \"" + s + "\"");
  }
}

const char* verdict_name(int code) {
  switch (code) {
    case Exit::ok: return "pass";
    case Exit::failed: return "fail";
    default: return "inconclusive";
  }
}

// the named category the envelope should equal, when one is predicted
std::optional<CategoryName> predicted_category(const GroupModel& g) {
  using T = CategoryName::Tag;
  switch (g.kind) {
    case GroupKind::SN: return CategoryName{T::P};
    case GroupKind::HNs: return CategoryName{T::Ps, static_cast<int>(g.s)};
    case GroupKind::HNsd:
      if (g.n == 2 && g.s == 4 && g.d == 2) return CategoryName{T::H242D};
      return CategoryName{T::Ps, static_cast<int>(g.s)};
    case GroupKind::ON: return CategoryName{T::P2};
    case GroupKind::UN:
    case GroupKind::UNd: return CategoryName{T::MatchingP2};
    case GroupKind::BN: return CategoryName{T::P12};
    case GroupKind::CN: return CategoryName{T::MatchingP12};
    default: return std::nullopt;
  }
}

struct Context {
  RunConfig config;
  std::ostream& out;
  bool text = false;

  GroupModel group(const std::string& spec) const {
    json j = parse_json(spec, "group spec");
    if (j.is_object() && !j.contains("seed")) j["seed"] = config.seed;
    return group_from_json(j);
  }

  EnvelopeOptions envelope_options(std::optional<std::size_t> samples) const {
    EnvelopeOptions o;
    o.tolerance = config.tolerance;
    if (samples) o.fix.samples = *samples;
    o.fix.budget = std::max<Index>(1, config.memory_budget / 64);
    return o;
  }

  int emit(const std::string& command, json result, int code) const {
    json doc{{"command", command},
             {"config", to_json(config)},
             {"verdict", verdict_name(code)},
             {"result", std::move(result)}};
    if (!text) {
      out << doc.dump(2) << '\n';
      return code;
    }
    out << command << ": " << verdict_name(code) << '\n';
    for (const auto& [key, value] : doc["result"].items()) {
      if (value.is_primitive()) {
        out << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      } else if (value.is_array()) {
        out << "  " << key << ": " << value.size() << " entries\n";
      } else {
        out << "  " << key << ": " << value.dump() << '\n';
      }
    }
    return code;
  }
};

int cmd_enumerate(const Context& c, const std::string& upper, const std::string& lower,
                  const std::string& category) {
  const auto u = ColoredWord::parse(upper), l = ColoredWord::parse(lower);
  std::optional<CategoryName> cat;
  if (!category.empty()) cat = CategoryName::parse(category);
  json list = json::array();
  for (const auto& p : enumerate(u, l)) {
    if (!cat || is_member(p, *cat)) list.push_back(p.str());
  }
  json r{{"upper", u.str()}, {"lower", l.str()}, {"count", list.size()}, {"partitions", list}};
  if (cat) r["category"] = cat->str();
  return c.emit("enumerate", r, Exit::ok);
}

int cmd_close(const Context& c, const std::string& file, std::size_t bound, bool linear, std::size_t n, bool real) {
  const auto gens = read_partitions(file);
  const ClosureMode mode = real ? ClosureMode::real : ClosureMode::colored;
  if (!linear) {
    const auto t = close_partitions(gens, bound, mode);
    return c.emit("close", to_json(t),
                  t.status == ClosureStatus::stable_within_bound ? Exit::ok : Exit::inconclusive);
  }
  std::vector<TensorMap> maps;
  for (const auto& p : gens) maps.push_back(to_one_row(build_map(p, n)));
  const auto t = close_linear(maps, n, bound, mode);
  return c.emit("close", to_json(t),
                t.status == ClosureStatus::stable_within_bound ? Exit::ok : Exit::inconclusive);
}

int cmd_envelope(const Context& c, const std::string& spec, std::size_t bound, std::optional<std::size_t> samples,
                 const std::string& expect) {
  const GroupModel g = c.group(spec);
  const auto env = easy_envelope(g, bound, c.envelope_options(samples));
  json r = to_json(env);
  int code = Exit::ok;
  if (auto defect = envelope_closure_defect(env)) {
    r["closure_defect"] = to_json(*defect);
    code = Exit::failed;
  }
  if (!expect.empty()) {
    const auto cat = CategoryName::parse(expect);
    r["expected"] = cat.str();
    if (auto diff = table_difference(env.table, filter_table(cat, bound, env.table.mode))) {
      r["witness"] = to_json(*diff);
      code = Exit::failed;
    }
  }
  if (!g.exact()) r["seed"] = g.seed;
  return c.emit("envelope", r, code);
}

int cmd_brauer(const Context& c, const std::string& spec, std::size_t bound, std::optional<std::size_t> samples) {
  const GroupModel g = c.group(spec);
  const auto cat = predicted_category(g);
  if (!cat) {
    return c.emit("brauer", json{{"group", g.name()}, {"detail", "no predicted category for this kind"}},
                  Exit::inconclusive);
  }
  const auto env = easy_envelope(g, bound, c.envelope_options(samples));
  json r{{"group", g.name()}, {"predicted", cat->str()}, {"bound", bound}, {"total", env.table.total()},
         {"exact", env.exact}};
  if (!g.exact()) {
    r["seed"] = g.seed;
    r["tolerance"] = env.tolerance;
  }
  const auto diff = table_difference(env.table, filter_table(*cat, bound, env.table.mode));
  if (diff) r["witness"] = to_json(*diff);
  return c.emit("brauer", r, diff ? Exit::failed : Exit::ok);
}

int cmd_level(const Context& c, const std::string& spec, std::size_t p_max, const std::string& bounds,
              const std::string& mode) {
  const GroupModel g = c.group(spec);
  const auto [h, cl] = parse_bounds(bounds);
  HarvestMode hm = HarvestMode::fixed_points;
  if (mode == "full") {
    hm = HarvestMode::full;
  } else if (mode != "fixed_points") {
    throw ParseError("harvest mode must be full or fixed_points");
  }
  const auto rep = easiness_level_probe(g, p_max, h, cl, hm);
  bool reached = false;
  for (const auto& e : rep.per_p) reached = reached || e.verdict == LevelVerdict::equal_within_bound;
  return c.emit("level", to_json(rep), reached ? Exit::ok : Exit::inconclusive);
}

int cmd_presentation(const Context& c, const std::string& spec, std::size_t r_max, std::size_t bound) {
  const auto rep = presentation_level_probe(c.group(spec), r_max, bound);
  return c.emit("presentation", to_json(rep), rep.level ? Exit::ok : Exit::inconclusive);
}

int cmd_verify_halflib(const Context& c, std::size_t n, std::size_t legs, const std::string& relations) {
  if (legs != 3 && legs != 4) throw ParseError("--legs must be 3 or 4");
  json checks = json::array();
  bool all = true;
  const std::vector<std::string> words =
      legs == 3 ? std::vector<std::string>{"ooo"} : std::vector<std::string>{"oooo", "obob", "obbo"};
  for (const auto& w : words) {
    const auto t = verify_triple(n, ColoredWord::parse(w));
    checks.push_back({{"word", w},
                      {"conjugated_eq_explicit", t.conjugated_eq_explicit},
                      {"explicit_eq_mobius", t.explicit_eq_mobius}});
    all = all && t.ok();
  }
  const double defect = std::max(isometry_defect(build_F(n)), isometry_defect(build_F(n, Flavor::complex)));
  json r{{"n", n}, {"legs", legs}, {"checks", checks}, {"isometry_defect_below_1e-10", defect < 1e-10}};
  all = all && defect < 1e-10;
  if (!relations.empty()) {
    json rels = json::array();
    for (const auto& rel : emit_relations(relation_target_from_string(relations), n)) rels.push_back(to_json(rel));
    r["relations"] = rels;
  }
  return c.emit("verify-halflib", r, all ? Exit::ok : Exit::failed);
}

int cmd_maximality(const Context& c, const std::string& series, std::size_t n, std::size_t bound,
                   const std::string& coeffs, std::size_t budget, const std::string& capping,
                   std::size_t max_caps, bool no_singletons) {
  if (!capping.empty()) {
    CappingOptions o;
    o.max_caps = max_caps;
    o.singletons = !no_singletons;
    const auto cert = capping_search(Partition::parse(capping), o);
    return c.emit("maximality", to_json(cert), cert.found ? Exit::ok : Exit::inconclusive);
  }
  if (series.empty()) throw ParseError("maximality needs --series or --capping");
  if (n == 0) throw ParseError("maximality --series needs --n");
  const auto rep = series_runner(series_from_string(series), n, bound,
                                 coeffs.empty() ? default_coefficients() : parse_coefficients(coeffs), budget,
                                 c.config.seed);
  int code = Exit::ok;
  if (rep.stuck > 0) {
    code = Exit::failed;
  } else if (rep.expected_inconclusive) {
    code = Exit::inconclusive;
  }
  return c.emit("maximality", to_json(rep), code);
}

int cmd_replay(const Context& c, const std::string& file) {
  json doc = parse_json(read_file(file), "certificate");
  // accept the document written by `maximality --capping` as well as a bare certificate
  if (doc.is_object() && doc.contains("result")) doc = doc["result"];
  const auto cert = certificate_from_json(doc);
  const auto problem = replay(cert);
  json r{{"start", cert.start.str()}, {"end", cert.end.str()}, {"steps", cert.steps.size()}, {"valid", !problem}};
  if (problem) r["problem"] = *problem;
  if (!problem && !cert.found) return c.emit("replay", r, Exit::inconclusive);
  return c.emit("replay", r, problem ? Exit::failed : Exit::ok);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Easy quantum groups: partitions, envelopes, levels, half-liberation, maximality", "partcat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file, output = "json";
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::size_t threads = 0;
  app.add_option("--config", config_file, "RunConfig JSON file");
  app.add_option("--seed", seed, "seed for sampled paths");
  app.add_option("--tolerance", tolerance, "residual cut for sampled envelopes");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

  std::string upper, lower, category;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "list P(upper, lower)");
  enumerate_cmd->add_option("upper", upper, "upper word, o/b letters")->required();
  enumerate_cmd->add_option("lower", lower, "lower word")->required();
  enumerate_cmd->add_option("--category", category, "keep members of a named category");

  std::string gens_file;
  std::size_t bound = 0, n = 0;
  bool linear = false, real = false;
  auto* close_cmd = app.add_subcommand("close", "closure of generators within a leg bound");
  close_cmd->add_option("--gens", gens_file, "partition file")->required();
  close_cmd->add_option("--bound", bound, "leg bound (default: config bounds.closure)");
  close_cmd->add_flag("--linear", linear, "close the maps T_π at size n");
  close_cmd->add_option("--n", n, "size for --linear");
  close_cmd->add_flag("--real", real, "ignore colors");

  std::string spec, expect;
  std::optional<std::size_t> samples;
  auto* envelope_cmd = app.add_subcommand("envelope", "easy envelope D¹ of a group");
  envelope_cmd->add_option("--group", spec, "group spec JSON")->required();
  envelope_cmd->add_option("--bound", bound, "leg bound (default: config bounds.legs)");
  envelope_cmd->add_option("--samples", samples, "Haar samples for sampled kinds");
  envelope_cmd->add_option("--expect", expect, "compare with a named category");

  auto* brauer_cmd = app.add_subcommand("brauer", "envelope against the predicted category");
  brauer_cmd->add_option("--group", spec, "group spec JSON")->required();
  brauer_cmd->add_option("--bound", bound, "leg bound (default: config bounds.legs)");
  brauer_cmd->add_option("--samples", samples, "Haar samples for sampled kinds");

  std::size_t p_max = 0;
  std::string bounds, harvest_mode = "fixed_points";
  auto* level_cmd = app.add_subcommand("level", "easiness level probe");
  level_cmd->add_option("--group", spec, "group spec JSON")->required();
  level_cmd->add_option("--pmax", p_max, "largest p")->required();
  level_cmd->add_option("--bounds", bounds, "harvest,closure (default: config bounds)");
  level_cmd->add_option("--mode", harvest_mode, "full or fixed_points");

  std::size_t r_max = 0;
  auto* presentation_cmd = app.add_subcommand("presentation", "presentation level probe");
  presentation_cmd->add_option("--group", spec, "group spec JSON")->required();
  presentation_cmd->add_option("--rmax", r_max, "largest r")->required();
  presentation_cmd->add_option("--bound", bound, "closure bound (default: config bounds.closure)");

  std::size_t legs = 3;
  std::string relations;
  auto* halflib_cmd = app.add_subcommand("verify-halflib", "triple equality of the conjugated crossing");
  halflib_cmd->add_option("--n", n, "size")->required();
  halflib_cmd->add_option("--legs", legs, "3 or 4");
  halflib_cmd->add_option("--relations", relations, "also emit BNo, CNo, CNx, CNoo or UNss");

  std::string series, coeffs, capping;
  std::size_t budget = 1000, max_caps = 8;
  bool no_singletons = false;
  auto* max_cmd = app.add_subcommand("maximality", "order-2 series runs or capping certificates");
  max_cmd->add_option("--series", series, "S, O, B or H");
  max_cmd->add_option("--n", n, "size");
  max_cmd->add_option("--bound", bound, "leg bound");
  max_cmd->add_option("--coeffs", coeffs, "α:β pairs, comma separated");
  max_cmd->add_option("--budget", budget, "max (π, σ) pairs");
  max_cmd->add_option("--capping", capping, "search a capping certificate for this partition");
  max_cmd->add_option("--max-caps", max_caps, "cap budget for --capping");
  max_cmd->add_flag("--no-singletons", no_singletons, "forbid singleton drops in --capping");

  std::string cert_file;
  auto* replay_cmd = app.add_subcommand("replay", "re-verify a stored capping certificate");
  replay_cmd->add_option("--cert", cert_file, "certificate JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return Exit::usage;
  }

  try {
    Context c{RunConfig{}, out};
    if (!config_file.empty()) c.config = run_config_from_json(parse_json(read_file(config_file), "config"));
    if (seed) c.config.seed = *seed;
    if (tolerance) c.config.tolerance = *tolerance;
    if (app.get_option("--output")->count() > 0) {
      c.config.output = output == "text" ? RunConfig::Output::text : RunConfig::Output::json;
    }
    c.text = c.config.output == RunConfig::Output::text;
    worker_threads() = threads;
    const std::size_t legs_bound = bound ? bound : c.config.bounds.legs;
    const std::size_t closure_bound = bound ? bound : c.config.bounds.closure;
    if (bounds.empty()) {
      bounds = std::to_string(c.config.bounds.harvest) + "," + std::to_string(c.config.bounds.closure);
    }

    if (*enumerate_cmd) return cmd_enumerate(c, upper, lower, category);
    if (*close_cmd) {
      if (linear && n == 0) throw ParseError("--linear needs --n");
      return cmd_close(c, gens_file, closure_bound, linear, n, real);
    }
    if (*envelope_cmd) return cmd_envelope(c, spec, legs_bound, samples, expect);
    if (*brauer_cmd) return cmd_brauer(c, spec, legs_bound, samples);
    if (*level_cmd) return cmd_level(c, spec, p_max, bounds, harvest_mode);
    if (*presentation_cmd) return cmd_presentation(c, spec, r_max, closure_bound);
    if (*halflib_cmd) return cmd_verify_halflib(c, n, legs, relations);
    if (*max_cmd) return cmd_maximality(c, series, n, legs_bound, coeffs, budget, capping, max_caps, no_singletons);
    if (*replay_cmd) return cmd_replay(c, cert_file);
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const WordMismatchError& e) {
    err << "usage error: " << e.what() << '\n';
    return Exit::usage;
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return Exit::inconclusive;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return Exit::failed;
  }
  return Exit::usage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace partcat::cli
