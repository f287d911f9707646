#pragma once

#include <vector>

#include "groupalg/groupoid.hpp"
#include "groupalg/haar.hpp"
#include "groupalg/representation.hpp"

namespace groupalg {

// γ = τ_tgt ∘ g ∘ τ_src⁻¹ with g in the isotropy group at the base.
struct Factorization {
  ObjectId tgt;
  ArrowId g;
  ObjectId src;
};

struct TransitiveDecomposition {
  ObjectId base;
  std::vector<ArrowId> isotropy;     // at base, unit first
  std::vector<ArrowId> trivializer;  // τ_x : base -> x, indexed by x
  std::vector<Factorization> factor; // per arrow
};

// Base = object 0; τ_base is its unit and every other τ_x is the lowest arrow
// base -> x. Throws NotTransitive.
TransitiveDecomposition decompose_transitive(const FiniteGroupoid& g);

// Recomposition reproduces every arrow and γ ↦ (t, g, s) is a bijection onto
// objects × isotropy × objects.
Report check_decomposition(const FiniteGroupoid& g, const TransitiveDecomposition& d);

// Images Φ(δ_γ) = √(c(t)c(s)) E_ts ⊗ λ(g) in M_n ⊗ M_|H|, where c(x) is the
// weight of unit x, E_xy has the single entry √(ν(y)/ν(x)) at (x,y), and λ is
// the left-regular representation of the isotropy group at the base.
std::vector<Matrix> lemma_images(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                                 const TransitiveDecomposition& d);

// Φ is a bijective *-homomorphism from the convolution algebra onto
// M_n ⊗ ℂ[H]: dimension count, structure constants on all basis pairs,
// involution against the ν-weighted adjoint, and injectivity by rank.
// Throws NotTransitive.
Report lemma_isomorphism_check(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                               double tol = 1e-12);

// Restrictions of the family to each Γ(x,−) span that fibre space.
Report fundamental_family_check(const FiniteGroupoid& g, const HaarSystem& mu,
                                const std::vector<GroupoidFunction>& family);

// Numerical rank with relative threshold.
std::size_t matrix_rank(const Matrix& m, double rel_tol = 1e-10);

} // namespace groupalg
