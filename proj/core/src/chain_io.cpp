#include "dumbwaiter/chain_io.hpp"

#include <json.hpp>

#include "dumbwaiter/numfmt.hpp"

namespace dumbwaiter::chain {

using nlohmann::json;

std::string matrix_to_json(const TransitionMatrix& m) {
  json doc;
  doc["schema_version"] = 1;
  doc["n_floors"] = m.n_floors();
  auto& states = doc["states"] = json::array();
  for (const auto& s : m.states()) states.push_back(to_string(s, m.n_floors()));
  auto& rows = doc["rows"] = json::array();
  for (std::size_t i = 0; i < m.dimension(); ++i) {
    json row = json::array();
    for (const auto& e : m.row(i)) row.push_back(json::array({e.col, format_decimal(e.prob)}));
    rows.push_back(std::move(row));
  }
  return doc.dump() + "\n";
}

TransitionMatrix matrix_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != 1) {
      throw std::invalid_argument("matrix JSON: unsupported schema_version");
    }
    const int n = doc.at("n_floors").get<int>();
    const auto expected = enumerate_states(n);
    const auto& states = doc.at("states");
    if (states.size() != expected.size()) throw std::invalid_argument("matrix JSON: wrong state count");
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (states[i].get<std::string>() != to_string(expected[i], n)) {
        throw std::invalid_argument("matrix JSON: states[" + std::to_string(i) + "] out of order");
      }
    }
    std::vector<std::vector<Entry>> rows;
    for (const auto& r : doc.at("rows")) {
      auto& row = rows.emplace_back();
      for (const auto& pair : r) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("matrix JSON: bad entry");
        row.push_back({pair[0].get<std::uint32_t>(), parse_decimal(pair[1].get<std::string>())});
      }
    }
    return TransitionMatrix(n, rows);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("matrix JSON: ") + e.what());
  }
}

}  // namespace dumbwaiter::chain
