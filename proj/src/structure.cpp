#include <algorithm>
#include <numeric>

#include "groupalg/groupoid.hpp"

namespace groupalg {

std::vector<ArrowId> target_fiber(const FiniteGroupoid& g, ObjectId x) {
  auto f = g.target_fiber(x);
  return {f.begin(), f.end()};
}

std::vector<ArrowId> source_fiber(const FiniteGroupoid& g, ObjectId y) {
  auto f = g.source_fiber(y);
  return {f.begin(), f.end()};
}

std::vector<std::vector<ObjectId>> orbits(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<std::size_t> block(n, n);
  std::vector<std::vector<ObjectId>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (block[start] != n) continue;
    std::size_t b = out.size();
    out.emplace_back();
    std::vector<std::size_t> stack{start};
    block[start] = b;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      // Arrows are invertible in a groupoid, but follow both directions so
      // the partition is also correct on raw tables with missing inverses.
      auto visit = [&](ObjectId y) {
        if (block[idx(y)] == n) {
          block[idx(y)] = b;
          stack.push_back(idx(y));
        }
      };
      for (ArrowId a : g.target_fiber(object_id(x))) visit(g.source(a));
      for (ArrowId a : g.source_fiber(object_id(x))) visit(g.target(a));
    }
  }
  for (std::size_t x = 0; x < n; ++x) out[block[x]].push_back(object_id(x));
  return out;
}

bool is_transitive(const FiniteGroupoid& g) { return orbits(g).size() == 1; }

std::vector<ArrowId> isotropy(const FiniteGroupoid& g, ObjectId x) {
  std::vector<ArrowId> out;
  auto u = g.try_unit(x);
  if (u) out.push_back(*u);
  for (ArrowId a : g.target_fiber(x))
    if (g.source(a) == x && (!u || a != *u)) out.push_back(a);
  return out;
}

FiniteGroupoid subgroupoid(const FiniteGroupoid& g, const std::vector<ArrowId>& arrows) {
  std::vector<ArrowId> keep = arrows;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<std::size_t> arrow_pos(g.arrow_count(), g.arrow_count());
  for (std::size_t k = 0; k < keep.size(); ++k) arrow_pos[idx(keep[k])] = k;

  std::vector<bool> touched(g.object_count(), false);
  for (ArrowId a : keep) touched[idx(g.target(a))] = touched[idx(g.source(a))] = true;
  std::vector<std::size_t> object_pos(g.object_count(), 0);

  GroupoidTables t;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    if (!touched[x]) continue;
    object_pos[x] = t.objects.size();
    t.objects.push_back(g.object_label(object_id(x)));
  }
  auto kept = [&](std::optional<ArrowId> a) -> std::optional<ArrowId> {
    if (!a || arrow_pos[idx(*a)] == g.arrow_count()) return std::nullopt;
    return arrow_id(arrow_pos[idx(*a)]);
  };
  for (ArrowId a : keep) {
    t.arrow_labels.push_back(g.arrow_label(a));
    t.tgt.push_back(object_id(object_pos[idx(g.target(a))]));
    t.src.push_back(object_id(object_pos[idx(g.source(a))]));
    t.inverse.push_back(kept(g.try_inverse(a)));
  }
  for (std::size_t x = 0; x < g.object_count(); ++x)
    if (touched[x]) t.units.push_back(kept(g.try_unit(object_id(x))));
  for (ArrowId a : keep) {
    for (ArrowId b : g.target_fiber(g.source(a))) {
      auto ka = kept(a), kb = kept(b), kr = kept(g.try_compose(a, b));
      if (ka && kb && kr) t.compose.push_back({*ka, *kb, *kr});
    }
  }
  return FiniteGroupoid::from_tables(std::move(t));
}

FiniteGroupoid isotropy_bundle(const FiniteGroupoid& g) {
  // Keep every object even when only its unit survives.
  std::vector<ArrowId> loops;
  for (const auto& a : g.arrows())
    if (a.tgt == a.src) loops.push_back(a.id);
  return subgroupoid(g, loops);
}

MultiplierSets multipliers(const FiniteGroupoid& g) {
  for (std::size_t x = 0; x < g.object_count(); ++x)
    if (isotropy(g, object_id(x)).size() > 1)
      throw NotRelationGroupoid("object '" + g.object_label(object_id(x)) +
                                "' has nontrivial isotropy");
  if (!is_relation_groupoid(g))
    throw NotRelationGroupoid("two arrows share the same endpoints");

  const std::size_t n = g.object_count();
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
  for (const auto& a : g.arrows()) related[idx(a.tgt)][idx(a.src)] = true;

  MultiplierSets m;
  std::vector<bool> in_left(n), in_right(n);
  for (std::size_t x = 0; x < n; ++x) {
    in_left[x] = std::all_of(related[x].begin(), related[x].end(), [](bool b) { return b; });
    in_right[x] = true;
    for (std::size_t v = 0; v < n; ++v) in_right[x] = in_right[x] && related[v][x];
    if (in_left[x]) m.left.push_back(object_id(x));
    if (in_right[x]) m.right.push_back(object_id(x));
    if (in_left[x] && in_right[x]) m.ideal.push_back(object_id(x));
  }

  auto pair_text = [&](ObjectId t, ObjectId s) {
    return relation_arrow_label(g.object_label(t), g.object_label(s));
  };
  auto certify = [&](const std::string& check, ArrowId first, ArrowId second,
                     bool endpoint_in_set, const char* which) {
    auto r = g.try_compose(first, second);
    ObjectId t = g.target(first), s = g.source(second);
    if (!r || !related[idx(t)][idx(s)]) {
      m.closure.fail(check, "composite " + pair_text(t, s) + " missing from the relation");
      return;
    }
    if (!endpoint_in_set)
      m.closure.fail(check, "composite " + pair_text(t, s) + " leaves the " + which + " set");
  };

  // Left multipliers are stable under right multiplication by A, right
  // multipliers under left multiplication; the ideal under both.
  for (ObjectId x : m.left)
    for (ArrowId a : g.target_fiber(x))
      for (ArrowId b : g.target_fiber(g.source(a)))
        certify("left-module", a, b, in_left[idx(g.target(a))], "left multiplier");
  for (ObjectId y : m.right)
    for (ArrowId a : g.source_fiber(y))
      for (ArrowId b : g.source_fiber(g.target(a)))
        certify("right-module", b, a, in_right[idx(g.source(a))], "right multiplier");
  for (ObjectId x : m.ideal) {
    for (ArrowId a : g.target_fiber(x))
      for (ArrowId b : g.target_fiber(g.source(a)))
        certify("ideal-closure", a, b, in_left[idx(x)] && in_right[idx(x)], "ideal");
    for (ArrowId a : g.source_fiber(x))
      for (ArrowId b : g.source_fiber(g.target(a)))
        certify("ideal-closure", b, a, in_left[idx(x)] && in_right[idx(x)], "ideal");
  }
  return m;
}

} // namespace groupalg
