#pragma once

// Independent reference computations for tests. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupalg/constructions.hpp"
#include "groupalg/haar.hpp"
#include "groupalg/rng.hpp"

namespace oracle {

using groupalg::Complex;
using groupalg::FiniteGroupoid;
using groupalg::GroupoidFunction;
using groupalg::HaarSystem;

// Equivalence closure on the touched labels by iterated squaring.
inline std::set<std::pair<std::string, std::string>> closure(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::set<std::pair<std::string, std::string>> rel(pairs.begin(), pairs.end());
  for (const auto& [x, y] : pairs) {
    rel.insert({x, x});
    rel.insert({y, y});
    rel.insert({y, x});
  }
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = rel;
    for (const auto& [x, y] : snapshot)
      for (const auto& [u, z] : snapshot)
        if (y == u && rel.insert({x, z}).second) grew = true;
  }
  return rel;
}

// (f*h)(γ) = Σ over composable pairs η∘ξ = γ of f(η) h(ξ) weight(η).
inline GroupoidFunction convolve(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f,
                                 const GroupoidFunction& h) {
  GroupoidFunction out(g.arrow_count());
  for (const auto& a : g.arrows())
    for (const auto& b : g.arrows()) {
      auto c = g.try_compose(a.id, b.id);
      if (c) out[idx(*c)] += f[idx(a.id)] * h[idx(b.id)] * mu.weight[idx(a.id)];
    }
  return out;
}

using Dense = std::vector<std::vector<Complex>>;

// F(i,j) = f(arrow with target i and source j) on a relation groupoid.
inline Dense to_matrix(const FiniteGroupoid& g, const GroupoidFunction& f) {
  const std::size_t n = g.object_count();
  Dense m(n, std::vector<Complex>(n));
  for (const auto& a : g.arrows()) m[idx(a.tgt)][idx(a.src)] = f[idx(a.id)];
  return m;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline double max_distance(const Dense& a, const Dense& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) best = std::max(best, std::abs(a[i][j] - b[i][j]));
  return best;
}

// Number of classes after identifying the given pairs of ids in [0, n).
inline std::size_t class_count(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& same) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : same) {
      std::size_t m = std::min(label[a], label[b]);
      if (label[a] != m || label[b] != m) {
        label[a] = label[b] = m;
        changed = true;
      }
    }
  }
  return std::set<std::size_t>(label.begin(), label.end()).size();
}

inline GroupoidFunction random_function(const FiniteGroupoid& g, groupalg::SplitMix64& rng) {
  GroupoidFunction f(g.arrow_count());
  for (auto& v : f) v = rng.complex_unit_box();
  return f;
}

inline HaarSystem random_invariant_haar(const FiniteGroupoid& g, groupalg::SplitMix64& rng) {
  std::vector<double> w(g.object_count());
  for (auto& v : w) v = rng.uniform(0.5, 2.0);
  return groupalg::source_weighted_haar(g, w);
}

// Disjoint union of pair(k) × H blocks with H ∈ {1, ℤ₂, ℤ₃, S₃}, at most
// `max_arrows` arrows, objects and arrows shuffled.
inline FiniteGroupoid random_groupoid(groupalg::SplitMix64& rng, std::size_t max_arrows = 64) {
  using namespace groupalg;
  static const std::vector<std::size_t> orders{1, 2, 3, 6};
  FiniteGroupoid g;
  bool empty = true;
  std::size_t arrows = 0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::size_t k = 1 + rng.below(3);
    std::size_t which = rng.below(orders.size());
    std::size_t size = k * k * orders[which];
    if (arrows + size > max_arrows) continue;
    FiniteGroupoid h = which == 3 ? symmetric_group(3, "x") : cyclic_group(orders[which], "x");
    FiniteGroupoid block = product(pair_groupoid(k), h);
    g = empty ? block : disjoint_union(g, block);
    empty = false;
    arrows += size;
    if (rng.below(3) == 0) break;
  }
  if (empty) g = pair_groupoid(2);
  std::vector<ArrowId> order;
  for (std::size_t a = 0; a < g.arrow_count(); ++a) order.push_back(arrow_id(a));
  rng.shuffle(order);
  g = reorder_arrows(g, order);
  std::vector<ObjectId> objects;
  for (std::size_t x = 0; x < g.object_count(); ++x) objects.push_back(object_id(x));
  rng.shuffle(objects);
  return reorder_objects(g, objects);
}

} // namespace oracle
