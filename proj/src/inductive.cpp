#include "groupalg/inductive.hpp"

#include <map>
#include <numeric>
#include <set>

namespace groupalg {

namespace {

struct Order {
  std::size_t n = 0;
  std::vector<std::vector<bool>> le;  // le[a][b]: a ≤ b
  // Map piece a -> piece b for a ≤ b, a ≠ b.
  std::vector<std::vector<std::optional<GroupoidMap>>> map;
};

// Reflexive-transitive closure plus one canonical map per comparable pair:
// the listed embedding when present, else a composite through a listed last
// step. Assumes the listed maps have the right shapes.
Order build_order(const InductiveSystem& sys) {
  Order o;
  o.n = sys.pieces.size();
  o.le.assign(o.n, std::vector<bool>(o.n, false));
  o.map.assign(o.n, std::vector<std::optional<GroupoidMap>>(o.n));
  for (std::size_t a = 0; a < o.n; ++a) o.le[a][a] = true;
  for (const auto& e : sys.embeddings) {
    o.le[e.from][e.to] = true;
    if (e.from != e.to && !o.map[e.from][e.to]) o.map[e.from][e.to] = e.map;
  }
  for (std::size_t k = 0; k < o.n; ++k)
    for (std::size_t a = 0; a < o.n; ++a)
      for (std::size_t b = 0; b < o.n; ++b)
        if (o.le[a][k] && o.le[k][b]) o.le[a][b] = true;

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : sys.embeddings) {
      if (e.from == e.to) continue;
      for (std::size_t a = 0; a < o.n; ++a) {
        if (a == e.to || !o.map[a][e.from] || o.map[a][e.to]) continue;
        o.map[a][e.to] = compose_maps(e.map, *o.map[a][e.from]);
        changed = true;
      }
    }
  }
  return o;
}

} // namespace

Report check_system(const InductiveSystem& sys) {
  Report r;
  const std::size_t n = sys.pieces.size();
  if (sys.names.size() != n) {
    r.fail("shape", "piece names do not match the piece count");
    return r;
  }
  auto name = [&](std::size_t a) { return "'" + sys.names[a] + "'"; };

  for (std::size_t a = 0; a < n; ++a) {
    Report v = validate(sys.pieces[a]);
    if (!v.ok()) r.fail("piece", name(a) + ": " + v.violations().front().check + " " + v.violations().front().witness);
  }
  if (!r.ok()) return r;

  std::set<std::pair<std::size_t, std::size_t>> listed;
  bool maps_ok = true;
  for (const auto& e : sys.embeddings) {
    if (e.from >= n || e.to >= n) {
      r.fail("embedding", "piece index out of range");
      maps_ok = false;
      continue;
    }
    std::string pair = name(e.from) + " -> " + name(e.to);
    if (!listed.insert({e.from, e.to}).second) r.fail("embedding", "duplicate embedding " + pair);
    Report m = check_morphism(sys.pieces[e.from], sys.pieces[e.to], e.map, true);
    for (const auto& v : m.violations()) {
      r.fail("morphism", pair + ": " + v.check + " " + v.witness);
      maps_ok = false;
    }
    if (e.from == e.to && m.ok() && !same_map(e.map, identity_map(sys.pieces[e.from])))
      r.fail("identity", "self-embedding of " + name(e.from) + " is not the identity");
  }
  if (!maps_ok) return r;

  Order o = build_order(sys);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (o.le[a][b] && o.le[b][a]) r.fail("antisymmetry", name(a) + " and " + name(b) + " embed into each other");
  if (!r.ok()) return r;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (std::size_t c = 0; c < n && !bounded; ++c) bounded = o.le[a][c] && o.le[b][c];
      if (!bounded) r.fail("directed", name(a) + " and " + name(b) + " have no upper bound");
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !o.le[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == a || c == b || !o.le[b][c]) continue;
        if (!same_map(*o.map[a][c], compose_maps(*o.map[b][c], *o.map[a][b])))
          r.fail("cocycle", "(" + sys.names[a] + "," + sys.names[b] + "," + sys.names[c] + ")");
      }
      if (sys.pieces[a].object_count() == sys.pieces[b].object_count())
        r.note("distinctness: " + name(a) + " and " + name(b) + " have the same object set");
    }

  if (sys.ambient) {
    if (sys.to_ambient.size() != n) {
      r.fail("ambient", "one ambient map per piece expected");
      return r;
    }
    std::vector<bool> covered(sys.ambient->arrow_count(), false);
    for (std::size_t a = 0; a < n; ++a) {
      Report m = check_morphism(sys.pieces[a], *sys.ambient, sys.to_ambient[a], true);
      for (const auto& v : m.violations()) r.fail("ambient", name(a) + ": " + v.check + " " + v.witness);
      if (!m.ok()) continue;
      for (ArrowId x : sys.to_ambient[a].arrows) covered[idx(x)] = true;
    }
    if (!r.ok()) return r;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && o.le[a][b] &&
            !same_map(compose_maps(sys.to_ambient[b], *o.map[a][b]), sys.to_ambient[a]))
          r.fail("ambient-compatible", name(a) + " -> " + name(b));
    for (std::size_t k = 0; k < covered.size(); ++k)
      if (!covered[k]) {
        r.fail("ambient-cover", "arrow '" + sys.ambient->arrow_label(arrow_id(k)) + "' is not hit");
        break;
      }
  }
  return r;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // The smaller id stays the root.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

} // namespace

LimitResult limit(const InductiveSystem& sys) {
  Report r = check_system(sys);
  if (!r.ok())
    throw SystemInvalid(r.violations().front().check + ": " + r.violations().front().witness);

  const std::size_t n = sys.pieces.size();
  std::vector<std::size_t> obj_off{0}, arr_off{0};
  for (const auto& p : sys.pieces) {
    obj_off.push_back(obj_off.back() + p.object_count());
    arr_off.push_back(arr_off.back() + p.arrow_count());
  }
  UnionFind objects(obj_off.back()), arrows(arr_off.back());
  for (const auto& e : sys.embeddings) {
    for (std::size_t k = 0; k < e.map.objects.size(); ++k)
      objects.unite(obj_off[e.from] + k, obj_off[e.to] + idx(e.map.objects[k]));
    for (std::size_t k = 0; k < e.map.arrows.size(); ++k)
      arrows.unite(arr_off[e.from] + k, arr_off[e.to] + idx(e.map.arrows[k]));
  }

  // Class numbering in order of the smallest member.
  auto number = [](UnionFind& uf, std::size_t total) {
    std::vector<std::size_t> cls(total), rep_of_class;
    std::map<std::size_t, std::size_t> by_root;
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t root = uf.find(k);
      auto [it, fresh] = by_root.try_emplace(root, rep_of_class.size());
      if (fresh) rep_of_class.push_back(k);
      cls[k] = it->second;
    }
    return std::pair{cls, rep_of_class};
  };
  auto [obj_cls, obj_rep] = number(objects, obj_off.back());
  auto [arr_cls, arr_rep] = number(arrows, arr_off.back());

  auto piece_of = [](const std::vector<std::size_t>& off, std::size_t global) {
    std::size_t p = 0;
    while (off[p + 1] <= global) ++p;
    return p;
  };
  auto unique_labels = [&](const std::vector<std::size_t>& reps, const std::vector<std::size_t>& off,
                           bool is_object) {
    std::vector<std::string> labels;
    std::set<std::string> used;
    for (std::size_t global : reps) {
      std::size_t p = piece_of(off, global), local = global - off[p];
      std::string label = is_object ? sys.pieces[p].object_label(object_id(local))
                                    : sys.pieces[p].arrow_label(arrow_id(local));
      if (used.count(label)) label += "@" + sys.names[p];
      while (used.count(label)) label += "'";
      used.insert(label);
      labels.push_back(label);
    }
    return labels;
  };

  GroupoidTables t;
  t.objects = unique_labels(obj_rep, obj_off, true);
  t.arrow_labels = unique_labels(arr_rep, arr_off, false);
  const std::size_t na = arr_rep.size(), no = obj_rep.size();
  t.tgt.resize(na);
  t.src.resize(na);
  t.inverse.assign(na, std::nullopt);
  t.units.assign(no, std::nullopt);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose;
  for (std::size_t p = 0; p < n; ++p) {
    const auto& g = sys.pieces[p];
    auto oc = [&](ObjectId x) { return obj_cls[obj_off[p] + idx(x)]; };
    auto ac = [&](ArrowId a) { return arr_cls[arr_off[p] + idx(a)]; };
    for (const auto& a : g.arrows()) {
      std::size_t c = ac(a.id);
      t.tgt[c] = object_id(oc(a.tgt));
      t.src[c] = object_id(oc(a.src));
      t.inverse[c] = arrow_id(ac(g.inverse(a.id)));
      for (ArrowId b : g.target_fiber(a.src)) {
        auto key = std::pair{c, ac(b)};
        std::size_t result = ac(g.compose(a.id, b));
        auto [it, fresh] = compose.try_emplace(key, result);
        if (!fresh && it->second != result)
          throw SystemInvalid("pieces disagree on the composite of '" + g.arrow_label(a.id) + "' and '" +
                              g.arrow_label(b) + "'");
      }
    }
    for (std::size_t x = 0; x < g.object_count(); ++x)
      t.units[oc(object_id(x))] = arrow_id(ac(g.unit(object_id(x))));
  }
  for (const auto& [key, result] : compose)
    t.compose.push_back({arrow_id(key.first), arrow_id(key.second), arrow_id(result)});

  LimitResult out;
  out.groupoid = FiniteGroupoid::from_tables(std::move(t));
  Report v = validate(out.groupoid);
  if (!v.ok())
    throw SystemInvalid("limit is not a groupoid: " + v.violations().front().check + " " +
                        v.violations().front().witness);
  for (std::size_t p = 0; p < n; ++p) {
    GroupoidMap m;
    for (std::size_t k = 0; k < sys.pieces[p].object_count(); ++k) m.objects.push_back(object_id(obj_cls[obj_off[p] + k]));
    for (std::size_t k = 0; k < sys.pieces[p].arrow_count(); ++k) m.arrows.push_back(arrow_id(arr_cls[arr_off[p] + k]));
    out.injections.push_back(std::move(m));
  }
  return out;
}

} // namespace groupalg
