#pragma once

#include <optional>
#include <vector>

#include "groupalg/groupoid.hpp"

namespace groupalg {

// A local bisection: pick[x] is an arrow with source x, or nullopt when x is
// outside the domain. Targets of the picked arrows are pairwise distinct.
struct Bisection {
  std::vector<std::optional<ArrowId>> pick;

  bool contains(ObjectId x) const { return idx(x) < pick.size() && pick[idx(x)].has_value(); }
  ArrowId at(ObjectId x) const;  // throws DomainMismatch
  friend bool operator==(const Bisection&, const Bisection&) = default;
};

// Source condition and injectivity of the target map.
bool is_bisection(const FiniteGroupoid& g, const Bisection& s);
// Domain is every object and the target map is a bijection.
bool is_full_bisection(const FiniteGroupoid& g, const Bisection& s);

Bisection unit_bisection(const FiniteGroupoid& g);

// All full bisections in lexicographic order of arrow choices (objects in
// order, candidate arrows in source-fibre order). Throws Error when more than
// `limit` exist.
std::vector<Bisection> enumerate_bisections(const FiniteGroupoid& g, std::size_t limit = 1u << 20);

// (σ⋆τ)(x) = σ(t(τx)) ∘ τx on the domain of τ. Throws DomainMismatch unless the
// target image of τ lies in the domain of σ.
Bisection bisection_compose(const FiniteGroupoid& g, const Bisection& sigma, const Bisection& tau);

// σ⁻¹(t(σx)) = (σx)⁻¹; its domain is the target image of σ.
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& sigma);

// L_σ(γ) = σ(t γ) ∘ γ. Throws DomainMismatch when t(γ) is outside the domain.
ArrowId left_translate(const FiniteGroupoid& g, const Bisection& sigma, ArrowId gamma);

// x ↦ t(σx); nullopt outside the domain.
std::vector<std::optional<ObjectId>> target_permutation(const FiniteGroupoid& g,
                                                        const Bisection& sigma);

// Arrows picked by σ, in object order.
std::vector<ArrowId> bisection_image(const Bisection& sigma);

} // namespace groupalg
