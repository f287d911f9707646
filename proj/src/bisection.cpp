#include "groupalg/bisection.hpp"

namespace groupalg {

ArrowId Bisection::at(ObjectId x) const {
  if (!contains(x)) throw DomainMismatch("object " + std::to_string(idx(x)) + " is outside the bisection domain");
  return *pick[idx(x)];
}

bool is_bisection(const FiniteGroupoid& g, const Bisection& s) {
  if (s.pick.size() != g.object_count()) return false;
  std::vector<bool> hit(g.object_count(), false);
  for (std::size_t x = 0; x < s.pick.size(); ++x) {
    if (!s.pick[x]) continue;
    ArrowId a = *s.pick[x];
    if (idx(a) >= g.arrow_count() || idx(g.source(a)) != x) return false;
    std::size_t t = idx(g.target(a));
    if (hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

bool is_full_bisection(const FiniteGroupoid& g, const Bisection& s) {
  if (!is_bisection(g, s)) return false;
  for (const auto& p : s.pick)
    if (!p) return false;
  return true;
}

Bisection unit_bisection(const FiniteGroupoid& g) {
  Bisection s;
  for (std::size_t x = 0; x < g.object_count(); ++x) s.pick.emplace_back(g.unit(object_id(x)));
  return s;
}

std::vector<Bisection> enumerate_bisections(const FiniteGroupoid& g, std::size_t limit) {
  const std::size_t n = g.object_count();
  std::vector<Bisection> out;
  Bisection current;
  current.pick.assign(n, std::nullopt);
  std::vector<bool> used(n, false);

  auto recurse = [&](auto&& self, std::size_t x) -> void {
    if (x == n) {
      if (out.size() == limit) throw Error("more than " + std::to_string(limit) + " full bisections");
      out.push_back(current);
      return;
    }
    for (ArrowId a : g.source_fiber(object_id(x))) {
      std::size_t t = idx(g.target(a));
      if (used[t]) continue;
      used[t] = true;
      current.pick[x] = a;
      self(self, x + 1);
      used[t] = false;
    }
    current.pick[x] = std::nullopt;
  };
  recurse(recurse, 0);
  return out;
}

Bisection bisection_compose(const FiniteGroupoid& g, const Bisection& sigma, const Bisection& tau) {
  Bisection out;
  out.pick.assign(g.object_count(), std::nullopt);
  for (std::size_t x = 0; x < tau.pick.size(); ++x) {
    if (!tau.pick[x]) continue;
    ArrowId tx = *tau.pick[x];
    ObjectId y = g.target(tx);
    if (!sigma.contains(y))
      throw DomainMismatch("target '" + g.object_label(y) + "' of tau is outside the domain of sigma");
    out.pick[x] = g.compose(*sigma.pick[idx(y)], tx);
  }
  return out;
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& sigma) {
  Bisection out;
  out.pick.assign(g.object_count(), std::nullopt);
  for (const auto& p : sigma.pick)
    if (p) out.pick[idx(g.target(*p))] = g.inverse(*p);
  return out;
}

ArrowId left_translate(const FiniteGroupoid& g, const Bisection& sigma, ArrowId gamma) {
  ObjectId t = g.target(gamma);
  if (!sigma.contains(t))
    throw DomainMismatch("target '" + g.object_label(t) + "' is outside the bisection domain");
  return g.compose(*sigma.pick[idx(t)], gamma);
}

std::vector<std::optional<ObjectId>> target_permutation(const FiniteGroupoid& g,
                                                        const Bisection& sigma) {
  std::vector<std::optional<ObjectId>> out;
  for (const auto& p : sigma.pick) {
    if (p)
      out.emplace_back(g.target(*p));
    else
      out.emplace_back(std::nullopt);
  }
  return out;
}

std::vector<ArrowId> bisection_image(const Bisection& sigma) {
  std::vector<ArrowId> out;
  for (const auto& p : sigma.pick)
    if (p) out.push_back(*p);
  return out;
}

} // namespace groupalg
