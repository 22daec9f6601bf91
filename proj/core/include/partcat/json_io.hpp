#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "partcat/categories.hpp"
#include "partcat/halflib.hpp"
#include "partcat/partition.hpp"
#include "partcat/tensor_map.hpp"

namespace partcat {

/// {"upper": "ob", "lower": "", "blocks": [[1, 2]]}, legs 1-based as in the text format.
nlohmann::json to_json(const Partition& pi);
Partition partition_from_json(const nlohmann::json& j);

/// {"context": {"upper", "lower", "n"}, "triplets": [[row, col, "num", "den"], ...]}.
/// Numerator and denominator are decimal strings so large entries survive.
nlohmann::json to_json(const TensorMap& t);
TensorMap map_from_json(const nlohmann::json& j);

/// Cells keyed "(k,l)"; tables store one-row cells, so k is empty.
std::string cell_key(const ColoredWord& upper, const ColoredWord& lower);
nlohmann::json to_json(const PartitionTable& table);
nlohmann::json to_json(const LinearTable& table);

/// A relation as a map in the format above plus its label and word pair.
nlohmann::json to_json(const Relation& r);

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t memory_budget = std::uint64_t{1} << 30;  ///< bytes
  struct Bounds {
    std::size_t harvest = 4, closure = 4, legs = 4;
  } bounds;
  double tolerance = 1e-6;
  enum class Output { json, text } output = Output::json;
};

nlohmann::json to_json(const RunConfig& c);
/// Missing fields keep their defaults. Throws ParseError on bad types.
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace partcat
