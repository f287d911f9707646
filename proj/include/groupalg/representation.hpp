#pragma once

#include <Eigen/Dense>
#include <vector>

#include "groupalg/groupoid.hpp"
#include "groupalg/haar.hpp"

namespace groupalg {

using Matrix = Eigen::MatrixXcd;

// Probability measure on objects; positivity and normalization are checked by
// check_measure.
using ObjectMeasure = std::vector<double>;

ObjectMeasure uniform_measure(const FiniteGroupoid& g);
// Positive entries summing to 1 within `tol`.
Report check_measure(const FiniteGroupoid& g, const ObjectMeasure& nu, double tol = 1e-9);

struct InducedMeasures {
  std::vector<double> m;      // ν(tγ) weight(γ)
  std::vector<double> m_inv;  // m(γ⁻¹)
  std::vector<double> delta;  // m / m_inv
  std::vector<double> m_o;    // m Δ^{-1/2} = √(m m_inv)
};

InducedMeasures induced_measures(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu);

// Fibre dimensions and the diagonal inner-product weights on each fibre space.
struct HilbertBundle {
  std::vector<std::size_t> dim;
  std::vector<Eigen::VectorXd> metric;
};

// H_x = L²(Γ(x,−), μ^x) in the indicator basis, ordered as target_fiber(x).
HilbertBundle canonical_bundle(const FiniteGroupoid& g, const HaarSystem& mu);

struct BundleRep {
  HilbertBundle bundle;
  std::vector<Matrix> op;  // dim(tγ) × dim(sγ) per arrow
};

// Every fibre ℂ with metric 1 and every arrow acting as 1.
BundleRep trivial_rep(const FiniteGroupoid& g);

// 0/1 matrix of η ↦ γη from Γ(sγ,−) to Γ(tγ,−).
Matrix left_regular(const FiniteGroupoid& g, ArrowId gamma);
BundleRep left_regular_rep(const FiniteGroupoid& g, const HaarSystem& mu);

// Units, multiplicativity on all composable pairs, inverses and unitarity for
// the fibre metrics. Measurability is vacuous and recorded as a note.
Report check_representation(const FiniteGroupoid& g, const BundleRep& rep, double tol = 1e-12);

// Offsets of the object blocks in ⊕ₓ H_x; the last entry is the total size.
std::vector<std::size_t> block_offsets(const HilbertBundle& bundle);

// Positive diagonal of the bundle inner product Σₓ ν(x) ⟨ξ(x), ζ(x)⟩_{H_x}.
Eigen::VectorXd bundle_metric(const HilbertBundle& bundle, const ObjectMeasure& nu);

// π_ℓ(f) as a block matrix on ⊕ₓ H_x, defined by
// ⟨π_ℓ(f)ξ, ζ⟩ = Σ_γ f(γ) ⟨ℓ(γ)ξ(sγ), ζ(tγ)⟩ m_o(γ).
// Block (x,y) is ν(x)⁻¹ Σ_{γ: y→x} f(γ) m_o(γ) ℓ(γ). Throws ShapeMismatch.
Matrix integrate_rep(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                     const BundleRep& rep, const GroupoidFunction& f);

// Adjoint for the bundle inner product: M⁻¹ T† M.
Matrix bundle_adjoint(const HilbertBundle& bundle, const ObjectMeasure& nu, const Matrix& t);
// Operator norm for the bundle inner product: ‖M^{1/2} T M^{-1/2}‖₂.
double bundle_operator_norm(const HilbertBundle& bundle, const ObjectMeasure& nu, const Matrix& t);

// ‖π_ℓ(f)‖ ≤ ‖f‖_I + tol.
Report operator_norm_bound_check(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                                 const BundleRep& rep, const GroupoidFunction& f, double tol = 1e-9);

// ℓ'(γ) = U_{tγ} ℓ(γ) U_{sγ}⁻¹ for a field of operators U_x on H_x.
BundleRep conjugate_rep(const FiniteGroupoid& g, const BundleRep& rep, const std::vector<Matrix>& field);

// Block-diagonal operator ⊕ₓ U_x.
Matrix block_diagonal(const HilbertBundle& bundle, const std::vector<Matrix>& field);

// Converts matrices unitary for the standard inner product into matrices
// unitary for the fibre metric: W^{-1/2} V W^{1/2}.
std::vector<Matrix> metric_unitaries(const HilbertBundle& bundle, const std::vector<Matrix>& standard);

// Largest singular value.
double spectral_norm(const Matrix& m);
double max_abs(const Matrix& m);

} // namespace groupalg
