#include "groupalg/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace groupalg {

FiniteGroupoid pair_groupoid(const std::vector<std::string>& objects) {
  std::vector<LabelPair> pairs;
  for (const auto& x : objects)
    for (const auto& y : objects) pairs.emplace_back(x, y);
  return build_from_relation(objects, pairs, ClosurePolicy::strict);
}

FiniteGroupoid pair_groupoid(std::size_t n) {
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < n; ++i) objects.push_back(std::to_string(i));
  return pair_groupoid(objects);
}

FiniteGroupoid group_groupoid(const std::string& object, const std::vector<std::string>& elements,
                              const std::vector<std::vector<std::size_t>>& table) {
  const std::size_t n = elements.size();
  if (n == 0 || table.size() != n) throw StructureError("group table has wrong shape");
  GroupoidTables t;
  t.objects = {object};
  t.arrow_labels = elements;
  t.tgt.assign(n, object_id(0));
  t.src.assign(n, object_id(0));
  t.units = {arrow_id(0)};
  t.inverse.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw StructureError("group table has wrong shape");
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) throw StructureError("group table entry out of range");
      t.compose.push_back({arrow_id(i), arrow_id(j), arrow_id(table[i][j])});
      if (table[i][j] == 0 && !t.inverse[i]) t.inverse[i] = arrow_id(j);
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid cyclic_group(std::size_t n, const std::string& object) {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    elements.push_back(i == 0 ? "e" : i == 1 ? "g" : "g" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return group_groupoid(object, elements, table);
}

FiniteGroupoid symmetric_group(std::size_t k, const std::string& object) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = i;
    std::string label = "p";
    for (std::size_t v : perms[i]) label += std::to_string(v);
    elements.push_back(label);
  }
  std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      // (σ·τ)(v) = σ(τ(v))
      std::vector<std::size_t> c(k);
      for (std::size_t v = 0; v < k; ++v) c[v] = perms[i][perms[j][v]];
      table[i][j] = index.at(c);
    }
  return group_groupoid(object, elements, table);
}

FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  const std::size_t ho = h.object_count(), ha = h.arrow_count();
  auto obj = [&](ObjectId x, ObjectId u) { return object_id(idx(x) * ho + idx(u)); };
  auto arr = [&](ArrowId a, ArrowId b) { return arrow_id(idx(a) * ha + idx(b)); };

  GroupoidTables t;
  for (const auto& x : g.object_labels())
    for (const auto& u : h.object_labels()) t.objects.push_back(x + "*" + u);
  for (const auto& a : g.arrows())
    for (const auto& b : h.arrows()) {
      t.arrow_labels.push_back(g.arrow_label(a.id) + "*" + h.arrow_label(b.id));
      t.tgt.push_back(obj(a.tgt, b.tgt));
      t.src.push_back(obj(a.src, b.src));
      t.inverse.push_back(arr(g.inverse(a.id), h.inverse(b.id)));
    }
  for (std::size_t x = 0; x < g.object_count(); ++x)
    for (std::size_t u = 0; u < ho; ++u)
      t.units.push_back(arr(g.unit(object_id(x)), h.unit(object_id(u))));
  for (const auto& a : g.arrows())
    for (const auto& b : h.arrows())
      for (ArrowId c : g.target_fiber(a.src))
        for (ArrowId d : h.target_fiber(b.src))
          t.compose.push_back({arr(a.id, b.id), arr(c, d), arr(g.compose(a.id, c), h.compose(b.id, d))});
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  GroupoidTables t = g.tables();
  GroupoidTables u = h.tables();
  const std::size_t oo = t.objects.size(), ao = t.arrow_labels.size();

  std::set<std::string> used_objects(t.objects.begin(), t.objects.end());
  std::set<std::string> used_arrows(t.arrow_labels.begin(), t.arrow_labels.end());
  auto fresh = [](std::set<std::string>& used, const std::string& label) {
    std::string out = label;
    while (used.count(out)) out += "#2";
    used.insert(out);
    return out;
  };
  for (const auto& x : u.objects) t.objects.push_back(fresh(used_objects, x));
  for (std::size_t i = 0; i < u.arrow_labels.size(); ++i) {
    t.arrow_labels.push_back(fresh(used_arrows, u.arrow_labels[i]));
    t.tgt.push_back(object_id(idx(u.tgt[i]) + oo));
    t.src.push_back(object_id(idx(u.src[i]) + oo));
  }
  auto shift = [&](std::optional<ArrowId> a) -> std::optional<ArrowId> {
    if (!a) return std::nullopt;
    return arrow_id(idx(*a) + ao);
  };
  for (auto a : u.units) t.units.push_back(shift(a));
  for (auto a : u.inverse) t.inverse.push_back(shift(a));
  for (const auto& e : u.compose)
    t.compose.push_back({*shift(e.first), *shift(e.second), *shift(e.result)});
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid reorder_arrows(const FiniteGroupoid& g, const std::vector<ArrowId>& order) {
  const std::size_t n = g.arrow_count();
  if (order.size() != n) throw StructureError("arrow order has wrong length");
  std::vector<ArrowId> new_pos(n, kNoArrow);
  for (std::size_t k = 0; k < n; ++k) {
    if (idx(order[k]) >= n || new_pos[idx(order[k])] != kNoArrow)
      throw StructureError("arrow order is not a permutation");
    new_pos[idx(order[k])] = arrow_id(k);
  }
  GroupoidTables old = g.tables();
  GroupoidTables t;
  t.objects = old.objects;
  auto map = [&](std::optional<ArrowId> a) -> std::optional<ArrowId> {
    if (!a) return std::nullopt;
    return new_pos[idx(*a)];
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t o = idx(order[k]);
    t.arrow_labels.push_back(old.arrow_labels[o]);
    t.tgt.push_back(old.tgt[o]);
    t.src.push_back(old.src[o]);
    t.inverse.push_back(map(old.inverse[o]));
  }
  for (auto u : old.units) t.units.push_back(map(u));
  for (const auto& e : old.compose)
    t.compose.push_back({new_pos[idx(e.first)], new_pos[idx(e.second)], new_pos[idx(e.result)]});
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid reorder_objects(const FiniteGroupoid& g, const std::vector<ObjectId>& order) {
  const std::size_t n = g.object_count();
  if (order.size() != n) throw StructureError("object order has wrong length");
  std::vector<std::size_t> new_pos(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (idx(order[k]) >= n || new_pos[idx(order[k])] != n)
      throw StructureError("object order is not a permutation");
    new_pos[idx(order[k])] = k;
  }
  GroupoidTables t = g.tables();
  GroupoidTables out = t;
  for (std::size_t k = 0; k < n; ++k) {
    out.objects[k] = t.objects[idx(order[k])];
    out.units[k] = t.units[idx(order[k])];
  }
  for (auto& x : out.tgt) x = object_id(new_pos[idx(x)]);
  for (auto& x : out.src) x = object_id(new_pos[idx(x)]);
  return FiniteGroupoid::from_tables(std::move(out));
}

} // namespace groupalg
