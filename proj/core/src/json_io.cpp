#include "partcat/json_io.hpp"

#include <algorithm>

#include "partcat/errors.hpp"

namespace partcat {

namespace {

template <class F>
auto parsing(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

nlohmann::json to_json(const Partition& pi) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : pi.blocks()) {
    nlohmann::json legs = nlohmann::json::array();
    for (int leg : b) legs.push_back(leg + 1);
    blocks.push_back(legs);
  }
  return {{"upper", pi.upper().str()}, {"lower", pi.lower().str()}, {"blocks", blocks}};
}

Partition partition_from_json(const nlohmann::json& j) {
  return parsing("partition", [&] {
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j.at("blocks")) {
      std::vector<int> legs;
      for (const auto& leg : b) legs.push_back(leg.get<int>() - 1);
      blocks.push_back(legs);
    }
    return Partition::from_blocks(ColoredWord::parse(j.at("upper").get<std::string>()),
                                  ColoredWord::parse(j.at("lower").get<std::string>()), blocks);
  });
}

nlohmann::json to_json(const TensorMap& t) {
  nlohmann::json triplets = nlohmann::json::array();
  const Index rows = t.rows();
  for (const auto& [index, value] : t.entries().entries()) {
    triplets.push_back({index % rows, index / rows, value.get_num().get_str(), value.get_den().get_str()});
  }
  return {{"context", {{"upper", t.upper().str()}, {"lower", t.lower().str()}, {"n", t.n()}}},
          {"triplets", triplets}};
}

TensorMap map_from_json(const nlohmann::json& j) {
  return parsing("map", [&] {
    const auto& c = j.at("context");
    const ColoredWord upper = ColoredWord::parse(c.at("upper").get<std::string>());
    const ColoredWord lower = ColoredWord::parse(c.at("lower").get<std::string>());
    const std::size_t n = c.at("n").get<std::size_t>();
    const Index rows = checked_pow(n, lower.size()), cols = checked_pow(n, upper.size());
    std::vector<SparseVector::Entry> entries;
    for (const auto& t : j.at("triplets")) {
      const Index row = t.at(0).get<Index>(), col = t.at(1).get<Index>();
      if (row >= rows || col >= cols) throw ParseError("map: triplet outside the context");
      Rational q(mpz_class(t.at(2).get<std::string>()), mpz_class(t.at(3).get<std::string>()));
      q.canonicalize();
      entries.emplace_back(col * rows + row, q);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return TensorMap(upper, lower, n, SparseVector(std::move(entries)));
  });
}

std::string cell_key(const ColoredWord& upper, const ColoredWord& lower) {
  return "(" + upper.str() + "," + lower.str() + ")";
}

nlohmann::json to_json(const PartitionTable& table) {
  nlohmann::json cells = nlohmann::json::object();
  for (const auto& [word, parts] : table.cells) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& p : parts) list.push_back(p.str());
    cells[cell_key({}, word)] = list;
  }
  return {{"bound", table.bound}, {"mode", to_string(table.mode)}, {"status", to_string(table.status)},
          {"total", table.total()}, {"cells", cells}};
}

nlohmann::json to_json(const LinearTable& table) {
  nlohmann::json cells = nlohmann::json::object();
  for (const auto& [word, basis] : table.cells) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& m : basis.maps()) list.push_back(to_json(m)["triplets"]);
    cells[cell_key({}, word)] = list;
  }
  return {{"bound", table.bound}, {"n", table.n},           {"mode", to_string(table.mode)},
          {"status", to_string(table.status)},   {"total_dim", table.total_dim()}, {"cells", cells}};
}

nlohmann::json to_json(const Relation& r) {
  nlohmann::json j = to_json(r.map);
  j["label"] = r.label;
  j["words"] = cell_key(r.map.upper(), r.map.lower());
  return j;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"memory_budget", c.memory_budget},
          {"bounds", {{"harvest", c.bounds.harvest}, {"closure", c.bounds.closure}, {"legs", c.bounds.legs}}},
          {"tolerance", c.tolerance},
          {"output", c.output == RunConfig::Output::json ? "json" : "text"}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  return parsing("config", [&] {
    RunConfig c;
    c.seed = j.value("seed", c.seed);
    c.memory_budget = j.value("memory_budget", c.memory_budget);
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      c.bounds.harvest = b.value("harvest", c.bounds.harvest);
      c.bounds.closure = b.value("closure", c.bounds.closure);
      c.bounds.legs = b.value("legs", c.bounds.legs);
    }
    c.tolerance = j.value("tolerance", c.tolerance);
    const std::string out = j.value("output", std::string("json"));
    if (out == "json") {
      c.output = RunConfig::Output::json;
    } else if (out == "text") {
      c.output = RunConfig::Output::text;
    } else {
      throw ParseError("config: output must be json or text");
    }
    if (!(c.tolerance > 0)) throw ParseError("config: tolerance must be positive");
    return c;
  });
}

}  // namespace partcat
