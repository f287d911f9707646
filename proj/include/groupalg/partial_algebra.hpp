#pragma once

#include <string>
#include <utility>
#include <vector>

#include "groupalg/groupoid.hpp"

namespace groupalg {

using Vector = std::vector<Complex>;

// e_i* = phase · e_index, extended antilinearly.
struct StarEntry {
  std::size_t index = 0;
  Complex phase{1.0, 0.0};
};

// Finite-dimensional partial *-algebra on a basis e_0..e_{n-1}:
// e_i · e_j = Σ_k coeff[i][j][k] e_k whenever domain[i][j].
struct StructureTable {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> domain;
  std::vector<std::vector<Vector>> coeff;  // empty outside the domain
  std::vector<StarEntry> star;

  std::size_t dim() const noexcept { return labels.size(); }
  bool defined(std::size_t i, std::size_t j) const { return domain.at(i).at(j); }

  // Empty table of dimension n with identity star and no products.
  static StructureTable with_basis(std::vector<std::string> labels);
  void set_product(std::size_t i, std::size_t j, Vector value);
  std::size_t index_of(const std::string& label) const;  // throws UnknownLabel
};

struct SubspaceBasis {
  std::vector<Vector> vectors;
};

enum class Side { left, right };

// Shapes, star involution (index and phase), coefficients confined to the
// domain.
Report check_structure(const StructureTable& t, double tol = 1e-12);

// (x_i x_j)* = x_j* x_i* on the domain, plus the domain symmetry it needs.
Report check_star_compatibility(const StructureTable& t, double tol = 1e-12);

// Basis indices i with (i,j) defined for every j (left) or (j,i) for every j
// (right).
std::vector<std::size_t> multiplier_indices(const StructureTable& t, Side side);
SubspaceBasis multiplier_subspace(const StructureTable& t, Side side);

// With I = left ∩ right: for i ∈ I and every j, x_i x_j and x_j x_i must be
// supported on I.
Report ideal_closure_check(const StructureTable& t, double tol = 1e-12);

// Basis labels and the domain as (i,j) label pairs, in index order.
std::pair<std::vector<std::string>, std::vector<LabelPair>> extract_relation(const StructureTable& t);

// Bilinear extension. Throws DomainMismatch when u_i v_j ≠ 0 for an undefined
// pair (i,j).
Vector multiply(const StructureTable& t, const Vector& u, const Vector& v);
Vector star_vector(const StructureTable& t, const Vector& u);

// Matrix units e_ab of M_n with full domain and star = conjugate transpose.
// Labels "e11", "e12", ... (1-based).
StructureTable matrix_unit_table(std::size_t n);

// Convolution algebra of g with counting weights on the basis δ_γ: products
// defined on composable pairs, δ_γ* = δ_{γ⁻¹}.
StructureTable groupoid_structure_table(const FiniteGroupoid& g);

} // namespace groupalg
