#include "semispread/semilattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace semispread {

std::string_view to_string(LatticeError::Kind kind) {
  switch (kind) {
    case LatticeError::Kind::MalformedDocument: return "MalformedDocument";
    case LatticeError::Kind::DuplicateId: return "DuplicateId";
    case LatticeError::Kind::UnknownIdInPair: return "UnknownIdInPair";
    case LatticeError::Kind::NotAPartialOrder: return "NotAPartialOrder";
    case LatticeError::Kind::NotAJoinSemilattice: return "NotAJoinSemilattice";
    case LatticeError::Kind::InternalInvariantFailure: return "InternalInvariantFailure";
  }
  return "Unknown";
}

std::size_t JoinTable::index_of(std::string_view id) const {
  const auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) {
    throw LatticeError(LatticeError::Kind::UnknownIdInPair, "unknown element id '" + std::string(id) + "'",
                       std::string(id));
  }
  return static_cast<std::size_t>(it - ids_.begin());
}

std::vector<std::pair<std::size_t, std::size_t>> JoinTable::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!less(a, b)) continue;
      bool between = false;
      for (std::size_t c = 0; c < n && !between; ++c) between = less(a, c) && less(c, b);
      if (!between) out.emplace_back(a, b);
    }
  }
  return out;
}

JoinTable JoinTable::from_closed_order(std::vector<std::string> ids, std::vector<std::uint8_t> order) {
  const std::size_t n = ids.size();
  JoinTable t;
  t.ids_ = std::move(ids);
  t.order_ = std::move(order);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (t.leq(a, b) && t.leq(b, a)) {
        throw LatticeError(LatticeError::Kind::NotAPartialOrder,
                           "order has a cycle through '" + t.ids_[a] + "' and '" + t.ids_[b] + "'", t.ids_[a],
                           t.ids_[b]);
      }
    }
  }

  t.join_.assign(n * n, 0);
  std::vector<std::size_t> upper;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      upper.clear();
      for (std::size_t u = 0; u < n; ++u) {
        if (t.leq(a, u) && t.leq(b, u)) upper.push_back(u);
      }
      const auto least = std::find_if(upper.begin(), upper.end(), [&](std::size_t m) {
        return std::all_of(upper.begin(), upper.end(), [&](std::size_t u) { return t.leq(m, u); });
      });
      if (least == upper.end()) {
        throw LatticeError(LatticeError::Kind::NotAJoinSemilattice,
                           "no least upper bound for ('" + t.ids_[a] + "', '" + t.ids_[b] + "')", t.ids_[a],
                           t.ids_[b]);
      }
      t.join_[a * n + b] = t.join_[b * n + a] = static_cast<std::uint32_t>(*least);
    }
  }
  return t;
}

SemilatticeSpec parse_lattice_spec(std::string_view text) {
  using Kind = LatticeError::Kind;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LatticeError(Kind::MalformedDocument, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("elements") || !doc["elements"].is_array()) {
    throw LatticeError(Kind::MalformedDocument, "expected an object with an 'elements' array");
  }
  const nlohmann::json le = doc.value("le", nlohmann::json::array());
  if (!le.is_array()) throw LatticeError(Kind::MalformedDocument, "'le' must be an array");

  SemilatticeSpec spec;
  for (const auto& e : doc["elements"]) {
    if (!e.is_string() || e.get<std::string>().empty()) {
      throw LatticeError(Kind::MalformedDocument, "element ids must be nonempty strings");
    }
    spec.elements.push_back(e.get<std::string>());
  }
  if (spec.elements.empty()) throw LatticeError(Kind::MalformedDocument, "lattice has no elements");

  std::vector<std::string> sorted = spec.elements;
  std::sort(sorted.begin(), sorted.end());
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw LatticeError(Kind::DuplicateId, "duplicate element id '" + *dup + "'", *dup);
  }

  for (const auto& pair : le) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw LatticeError(Kind::MalformedDocument, "each 'le' entry must be a [lesser, greater] pair of ids");
    }
    auto lesser = pair[0].get<std::string>();
    auto greater = pair[1].get<std::string>();
    for (const auto* id : {&lesser, &greater}) {
      if (!std::binary_search(sorted.begin(), sorted.end(), *id)) {
        throw LatticeError(Kind::UnknownIdInPair, "'le' mentions unknown id '" + *id + "'", *id);
      }
    }
    spec.le.emplace_back(std::move(lesser), std::move(greater));
  }
  return spec;
}

JoinTable validate_join_semilattice(const SemilatticeSpec& spec) {
  const std::size_t n = spec.elements.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(spec.elements[i], i).second) {
      throw LatticeError(LatticeError::Kind::DuplicateId, "duplicate element id '" + spec.elements[i] + "'",
                         spec.elements[i]);
    }
  }
  std::vector<std::uint8_t> order(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) order[i * n + i] = 1;
  for (const auto& [lesser, greater] : spec.le) {
    const auto a = index.find(lesser);
    const auto b = index.find(greater);
    if (a == index.end() || b == index.end()) {
      const auto& bad = a == index.end() ? lesser : greater;
      throw LatticeError(LatticeError::Kind::UnknownIdInPair, "'le' mentions unknown id '" + bad + "'", bad);
    }
    order[a->second * n + b->second] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!order[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (order[k * n + j]) order[i * n + j] = 1;
      }
    }
  }
  return JoinTable::from_closed_order(spec.elements, std::move(order));
}

LayerDecomposition layer_decomposition(const JoinTable& table) {
  const std::size_t n = table.size();
  std::vector<bool> removed(n, false);
  std::size_t remaining = n;
  LayerDecomposition out;
  while (remaining > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t a = 0; a < n; ++a) {
      if (removed[a]) continue;
      bool maximal = true;
      for (std::size_t b = 0; b < n && maximal; ++b) maximal = removed[b] || !table.less(a, b);
      if (maximal) layer.push_back(a);
    }
    for (std::size_t a : layer) removed[a] = true;
    remaining -= layer.size();
    out.layers.push_back(std::move(layer));
  }
  return out;
}

std::vector<std::string> check_enumeration(const JoinTable& table, const LayerDecomposition& layers,
                                           const Enumeration& enumeration) {
  std::vector<std::string> problems;
  const std::size_t n = table.size();
  if (enumeration.order.size() != n || enumeration.position.size() != n) {
    problems.push_back("enumeration does not cover the element set");
    return problems;
  }
  std::vector<std::size_t> layer_of(n, 0);
  for (std::size_t k = 0; k < layers.layers.size(); ++k) {
    for (std::size_t a : layers.layers[k]) layer_of[a] = k;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (layer_of[enumeration.order[i]] > layer_of[enumeration.order[i + 1]]) {
      problems.push_back("layer order broken at position " + std::to_string(i));
    }
  }
  for (std::size_t beta = 0; beta < n; ++beta) {
    const std::size_t e = enumeration.order[beta];
    for (std::size_t earlier = 0; earlier < beta; ++earlier) {
      if (table.less(enumeration.order[earlier], e)) {
        problems.push_back("e_" + std::to_string(beta) + " is not minimal in U_" + std::to_string(beta + 1));
        break;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t joined = table.join(enumeration.order[i], enumeration.order[j]);
      if (enumeration.position[joined] > i) {
        problems.push_back("index(e_" + std::to_string(i) + " v e_" + std::to_string(j) + ") exceeds " +
                           std::to_string(i));
      }
    }
  }
  return problems;
}

Enumeration enumerate_elements(const JoinTable& table, const LayerDecomposition& layers, const Tiebreak& tiebreak) {
  Enumeration out;
  for (const auto& layer : layers.layers) {
    std::vector<std::size_t> sorted = layer;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](std::size_t a, std::size_t b) { return tiebreak(table.id(a), table.id(b)); });
    out.order.insert(out.order.end(), sorted.begin(), sorted.end());
  }
  out.position.assign(out.order.size(), 0);
  for (std::size_t beta = 0; beta < out.order.size(); ++beta) out.position[out.order[beta]] = beta;

  if (const auto problems = check_enumeration(table, layers, out); !problems.empty()) {
    throw LatticeError(LatticeError::Kind::InternalInvariantFailure, "enumeration invariant: " + problems.front());
  }
  return out;
}

SemilatticeSpec to_spec(const JoinTable& table) {
  SemilatticeSpec spec;
  spec.elements = table.ids();
  for (const auto& [a, b] : table.covers()) spec.le.emplace_back(table.id(a), table.id(b));
  return spec;
}

}  // namespace semispread
