#include "groupalg/morphism.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace groupalg {

GroupoidMap identity_map(const FiniteGroupoid& g) {
  GroupoidMap m;
  for (std::size_t i = 0; i < g.object_count(); ++i) m.objects.push_back(object_id(i));
  for (std::size_t i = 0; i < g.arrow_count(); ++i) m.arrows.push_back(arrow_id(i));
  return m;
}

GroupoidMap compose_maps(const GroupoidMap& outer, const GroupoidMap& inner) {
  GroupoidMap m;
  for (ObjectId x : inner.objects) m.objects.push_back(outer(x));
  for (ArrowId a : inner.arrows) m.arrows.push_back(outer(a));
  return m;
}

bool same_map(const GroupoidMap& a, const GroupoidMap& b) {
  return a.objects == b.objects && a.arrows == b.arrows;
}

Report check_morphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMap& map,
                      bool injective) {
  Report r;
  if (map.objects.size() != from.object_count() || map.arrows.size() != from.arrow_count()) {
    r.fail("shape", "map tables do not match the source groupoid");
    return r;
  }
  for (ObjectId x : map.objects)
    if (idx(x) >= to.object_count()) {
      r.fail("range", "object image out of range");
      return r;
    }
  for (ArrowId a : map.arrows)
    if (idx(a) >= to.arrow_count()) {
      r.fail("range", "arrow image out of range");
      return r;
    }

  if (injective) {
    std::vector<bool> hit_o(to.object_count(), false), hit_a(to.arrow_count(), false);
    for (std::size_t i = 0; i < map.objects.size(); ++i) {
      if (hit_o[idx(map.objects[i])]) {
        r.fail("injective", "object '" + from.object_label(object_id(i)) + "' collides");
        break;
      }
      hit_o[idx(map.objects[i])] = true;
    }
    for (std::size_t i = 0; i < map.arrows.size(); ++i) {
      if (hit_a[idx(map.arrows[i])]) {
        r.fail("injective", "arrow '" + from.arrow_label(arrow_id(i)) + "' collides");
        break;
      }
      hit_a[idx(map.arrows[i])] = true;
    }
  }

  for (const auto& a : from.arrows()) {
    ArrowId fa = map(a.id);
    if (to.target(fa) != map(a.tgt) || to.source(fa) != map(a.src)) {
      r.fail("endpoints", "arrow '" + from.arrow_label(a.id) + "'");
      break;
    }
  }
  for (std::size_t x = 0; x < from.object_count(); ++x) {
    auto u = from.try_unit(object_id(x));
    auto fu = to.try_unit(map(object_id(x)));
    if (u && (!fu || map(*u) != *fu)) {
      r.fail("units", "object '" + from.object_label(object_id(x)) + "'");
      break;
    }
  }
  for (const auto& a : from.arrows()) {
    auto inv = from.try_inverse(a.id);
    auto finv = to.try_inverse(map(a.id));
    if (inv && (!finv || map(*inv) != *finv)) {
      r.fail("inverse", "arrow '" + from.arrow_label(a.id) + "'");
      break;
    }
  }
  bool composition_ok = true;
  for (const auto& a : from.arrows()) {
    for (ArrowId b : from.target_fiber(a.src)) {
      auto ab = from.try_compose(a.id, b);
      if (!ab) continue;
      auto image = to.try_compose(map(a.id), map(b));
      if (!image || *image != map(*ab)) {
        r.fail("composition",
               "'" + from.arrow_label(a.id) + "' o '" + from.arrow_label(b) + "'");
        composition_ok = false;
        break;
      }
    }
    if (!composition_ok) break;
  }
  return r;
}

namespace {

class IsomorphismSearch {
public:
  IsomorphismSearch(const FiniteGroupoid& g, const FiniteGroupoid& h) : g_(g), h_(h) {
    for (std::size_t x = 0; x < g.object_count(); ++x) sig_g_.push_back(signature(g, object_id(x)));
    for (std::size_t x = 0; x < h.object_count(); ++x) sig_h_.push_back(signature(h, object_id(x)));
    // Units first, then arrow order; units are forced by the object map.
    for (std::size_t x = 0; x < g.object_count(); ++x) order_.push_back(g.unit(object_id(x)));
    for (const auto& a : g.arrows())
      if (std::find(order_.begin(), order_.end(), a.id) == order_.end()) order_.push_back(a.id);
  }

  std::optional<GroupoidMap> run() {
    if (g_.object_count() != h_.object_count() || g_.arrow_count() != h_.arrow_count())
      return std::nullopt;
    map_.objects.assign(g_.object_count(), object_id(0));
    map_.arrows.assign(g_.arrow_count(), kNoArrow);
    used_o_.assign(h_.object_count(), false);
    used_a_.assign(h_.arrow_count(), false);
    if (assign_object(0)) return map_;
    return std::nullopt;
  }

private:
  using Signature = std::tuple<std::size_t, std::size_t, std::size_t>;

  static Signature signature(const FiniteGroupoid& g, ObjectId x) {
    return {g.target_fiber(x).size(), g.source_fiber(x).size(), g.arrows_between(x, x).size()};
  }

  bool assign_object(std::size_t i) {
    if (i == g_.object_count()) return assign_arrow(0);
    for (std::size_t j = 0; j < h_.object_count(); ++j) {
      if (used_o_[j] || sig_g_[i] != sig_h_[j]) continue;
      bool fits = true;
      for (std::size_t k = 0; k < i && fits; ++k) {
        ObjectId gi = object_id(i), gk = object_id(k);
        ObjectId hj = object_id(j), hk = map_.objects[k];
        fits = g_.arrows_between(gi, gk).size() == h_.arrows_between(hj, hk).size() &&
               g_.arrows_between(gk, gi).size() == h_.arrows_between(hk, hj).size();
      }
      if (!fits) continue;
      used_o_[j] = true;
      map_.objects[i] = object_id(j);
      if (assign_object(i + 1)) return true;
      used_o_[j] = false;
    }
    return false;
  }

  bool assigned(ArrowId a) const { return map_.arrows[idx(a)] != kNoArrow; }

  bool consistent(ArrowId a) const {
    ArrowId fa = map_.arrows[idx(a)];
    if (auto inv = g_.try_inverse(a); inv && assigned(*inv))
      if (map_.arrows[idx(*inv)] != h_.inverse(fa)) return false;
    for (ArrowId b : g_.target_fiber(g_.source(a))) {
      ArrowId ab = g_.compose(a, b);
      if (assigned(b) && assigned(ab) &&
          h_.compose(fa, map_.arrows[idx(b)]) != map_.arrows[idx(ab)])
        return false;
    }
    for (ArrowId b : g_.source_fiber(g_.target(a))) {
      ArrowId ba = g_.compose(b, a);
      if (assigned(b) && assigned(ba) &&
          h_.compose(map_.arrows[idx(b)], fa) != map_.arrows[idx(ba)])
        return false;
    }
    // a = b ∘ c with b, c already placed.
    for (ArrowId b : g_.target_fiber(g_.target(a))) {
      ArrowId c = g_.compose(g_.inverse(b), a);
      if (assigned(b) && assigned(c) &&
          h_.compose(map_.arrows[idx(b)], map_.arrows[idx(c)]) != fa)
        return false;
    }
    return true;
  }

  bool assign_arrow(std::size_t k) {
    if (k == order_.size()) return true;
    ArrowId a = order_[k];
    ObjectId ft = map_.objects[idx(g_.target(a))], fs = map_.objects[idx(g_.source(a))];
    std::vector<ArrowId> candidates;
    if (k < g_.object_count())
      candidates = {h_.unit(ft)};
    else
      candidates = h_.arrows_between(ft, fs);
    for (ArrowId c : candidates) {
      if (used_a_[idx(c)]) continue;
      map_.arrows[idx(a)] = c;
      used_a_[idx(c)] = true;
      if (consistent(a) && assign_arrow(k + 1)) return true;
      used_a_[idx(c)] = false;
      map_.arrows[idx(a)] = kNoArrow;
    }
    return false;
  }

  const FiniteGroupoid& g_;
  const FiniteGroupoid& h_;
  std::vector<Signature> sig_g_, sig_h_;
  std::vector<ArrowId> order_;
  GroupoidMap map_;
  std::vector<bool> used_o_, used_a_;
};

} // namespace

std::optional<GroupoidMap> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h) {
  return IsomorphismSearch(g, h).run();
}

} // namespace groupalg
