#pragma once

#include <vector>

#include "groupalg/groupoid.hpp"

namespace groupalg {

// Complex value per arrow, in arrow order.
using GroupoidFunction = std::vector<Complex>;

// Strictly positive weight per arrow; μ^x is the restriction to Γ(x,−).
struct HaarSystem {
  std::vector<double> weight;
};

HaarSystem counting_haar(const FiniteGroupoid& g);
// weight(γ) = object_weight[s(γ)]; left-invariant for any positive choice.
HaarSystem source_weighted_haar(const FiniteGroupoid& g, const std::vector<double>& object_weight);

// Length and strict positivity of the weights.
Report check_haar_positive(const FiniteGroupoid& g, const HaarSystem& mu);

// weight(γη) = weight(η) for every γ and η ∈ Γ(s γ,−), compared with relative
// tolerance `tol`. Left translations act transitively on each source fibre
// inside an orbit, so the identity says the weight is constant there; every
// arrow off the majority value of its source fibre is reported (all of them
// on a tie).
Report check_left_invariance(const FiniteGroupoid& g, const HaarSystem& mu, double tol = 1e-12);

GroupoidFunction zero_function(const FiniteGroupoid& g);
GroupoidFunction constant_function(const FiniteGroupoid& g, Complex value);
GroupoidFunction delta(const FiniteGroupoid& g, ArrowId a, Complex value = 1.0);

// f_o(x) = Σ_{γ∈Γ(x,−)} f(γ) weight(γ)
std::vector<Complex> fiber_integrate(const FiniteGroupoid& g, const HaarSystem& mu,
                                     const GroupoidFunction& f);

// (f*h)(γ) = Σ_{η∈Γ(tγ,−)} f(η) h(η⁻¹γ) weight(η)
GroupoidFunction convolve(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f,
                          const GroupoidFunction& h);

// f*(γ) = conj f(γ⁻¹)
GroupoidFunction involute(const FiniteGroupoid& g, const GroupoidFunction& f);

// Σ_x weight(unit x)⁻¹ δ_{unit x}
GroupoidFunction unit_element(const FiniteGroupoid& g, const HaarSystem& mu);

// sup_x Σ_{γ∈Γ(x,−)} |f(γ)| weight(γ)
double i_norm_t(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f);
// sup_y Σ_{γ∈Γ(−,y)} |f(γ)| weight(γ⁻¹)
double i_norm_s(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f);
double i_norm(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f);

// Σ_γ f(γ) conj h(γ) weight(γ)
Complex half_density_inner(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f,
                           const GroupoidFunction& h);

double sup_norm(const GroupoidFunction& f);
double sup_distance(const GroupoidFunction& f, const GroupoidFunction& h);

// Largest fibre mass of a support set S, covering both forms of the I-norm:
// max over objects of Σ_{Γ(x,−)∩S} weight(γ) and Σ_{Γ(−,x)∩S} weight(γ⁻¹).
// Then ‖f‖_I ≤ C ‖f‖∞ for every f supported in S.
double support_fibre_mass(const FiniteGroupoid& g, const HaarSystem& mu,
                          const std::vector<bool>& support);

// For a net f_k → f with common support S: ‖f_k − f‖_I ≤ C ‖f_k − f‖∞ with
// C = support_fibre_mass(S), checked for every member.
Report i_norm_convergence_check(const FiniteGroupoid& g, const HaarSystem& mu,
                                const std::vector<GroupoidFunction>& net, const GroupoidFunction& limit,
                                const std::vector<bool>& support, double tol = 1e-12);

} // namespace groupalg
