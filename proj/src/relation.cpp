#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "groupalg/groupoid.hpp"

namespace groupalg {

std::string relation_arrow_label(std::string_view tgt, std::string_view src) {
  std::string label = "(";
  label += tgt;
  label += ',';
  label += src;
  label += ')';
  return label;
}

namespace {

using IndexPair = std::pair<std::size_t, std::size_t>;

FiniteGroupoid groupoid_of_pairs(const std::vector<std::string>& objects,
                                 const std::vector<IndexPair>& pairs) {
  // Keep touched objects in the caller's order.
  std::vector<bool> touched(objects.size(), false);
  for (auto [x, y] : pairs) touched[x] = touched[y] = true;
  std::vector<std::size_t> renumber(objects.size(), 0);
  GroupoidTables t;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!touched[i]) continue;
    renumber[i] = t.objects.size();
    t.objects.push_back(objects[i]);
  }

  std::map<IndexPair, ArrowId> arrow_of;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [x, y] = pairs[k];
    t.arrow_labels.push_back(relation_arrow_label(objects[x], objects[y]));
    t.tgt.push_back(object_id(renumber[x]));
    t.src.push_back(object_id(renumber[y]));
    arrow_of.emplace(pairs[k], arrow_id(k));
  }
  t.units.assign(t.objects.size(), std::nullopt);
  t.inverse.assign(pairs.size(), std::nullopt);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [x, y] = pairs[k];
    if (x == y) t.units[renumber[x]] = arrow_id(k);
    if (auto it = arrow_of.find({y, x}); it != arrow_of.end()) t.inverse[k] = it->second;
  }
  // (x,y) ∘ (y,z) = (x,z)
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [x, y] = pairs[k];
    for (std::size_t l = 0; l < pairs.size(); ++l) {
      auto [y2, z] = pairs[l];
      if (y2 != y) continue;
      if (auto it = arrow_of.find({x, z}); it != arrow_of.end())
        t.compose.push_back({arrow_id(k), arrow_id(l), it->second});
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

} // namespace

FiniteGroupoid build_from_relation(const std::vector<std::string>& objects,
                                   const std::vector<LabelPair>& pairs, ClosurePolicy policy) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (!index.emplace(objects[i], i).second)
      throw StructureError("duplicate object label '" + objects[i] + "'");

  auto lookup = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) throw UnknownLabel(label);
    return it->second;
  };

  std::vector<IndexPair> ordered;
  std::set<IndexPair> present;
  for (const auto& [x, y] : pairs) {
    IndexPair p{lookup(x), lookup(y)};
    if (present.insert(p).second) ordered.push_back(p);
  }

  if (policy == ClosurePolicy::strict) {
    for (auto [x, y] : ordered)
      for (auto [y2, z] : ordered)
        if (y2 == y && !present.count({x, z}))
          throw NotClosed("composite", objects[x], objects[z]);
    for (auto [x, y] : ordered)
      if (!present.count({y, x})) throw NotClosed("inverse", objects[y], objects[x]);
    for (auto [x, y] : ordered) {
      if (!present.count({x, x})) throw NotClosed("unit", objects[x], objects[x]);
      if (!present.count({y, y})) throw NotClosed("unit", objects[y], objects[y]);
    }
    return groupoid_of_pairs(objects, ordered);
  }

  // Equivalence closure on the touched objects.
  std::vector<std::size_t> parent(objects.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<bool> touched(objects.size(), false);
  for (auto [x, y] : ordered) {
    touched[x] = touched[y] = true;
    std::size_t rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
  for (std::size_t x = 0; x < objects.size(); ++x) {
    if (!touched[x]) continue;
    for (std::size_t y = 0; y < objects.size(); ++y) {
      if (!touched[y] || find(x) != find(y)) continue;
      if (present.insert({x, y}).second) ordered.push_back({x, y});
    }
  }
  return groupoid_of_pairs(objects, ordered);
}

std::vector<LabelPair> relation_pairs(const FiniteGroupoid& g) {
  std::vector<LabelPair> out;
  out.reserve(g.arrow_count());
  for (const auto& a : g.arrows()) out.emplace_back(g.object_label(a.tgt), g.object_label(a.src));
  return out;
}

bool is_relation_groupoid(const FiniteGroupoid& g) {
  std::set<std::pair<ObjectId, ObjectId>> seen;
  for (const auto& a : g.arrows())
    if (!seen.insert({a.tgt, a.src}).second) return false;
  return true;
}

} // namespace groupalg
