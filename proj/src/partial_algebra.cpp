#include "groupalg/partial_algebra.hpp"

#include <cmath>

namespace groupalg {

StructureTable StructureTable::with_basis(std::vector<std::string> labels) {
  StructureTable t;
  const std::size_t n = labels.size();
  t.labels = std::move(labels);
  t.domain.assign(n, std::vector<bool>(n, false));
  t.coeff.assign(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i) t.star.push_back({i, Complex(1.0, 0.0)});
  return t;
}

void StructureTable::set_product(std::size_t i, std::size_t j, Vector value) {
  if (value.size() != dim()) throw ShapeMismatch("product vector has wrong length");
  domain.at(i).at(j) = true;
  coeff.at(i).at(j) = std::move(value);
}

std::size_t StructureTable::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw UnknownLabel(label);
}

namespace {

std::string pair_text(const StructureTable& t, std::size_t i, std::size_t j) {
  return "(" + t.labels[i] + "," + t.labels[j] + ")";
}

} // namespace

Report check_structure(const StructureTable& t, double tol) {
  Report r;
  const std::size_t n = t.dim();
  if (t.domain.size() != n || t.coeff.size() != n || t.star.size() != n) {
    r.fail("shape", "tables do not match the basis size");
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.domain[i].size() != n || t.coeff[i].size() != n) {
      r.fail("shape", "row " + t.labels[i] + " has wrong length");
      return r;
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t want = t.domain[i][j] ? n : 0;
      if (t.coeff[i][j].size() != want)
        r.fail("shape", "coefficients of " + pair_text(t, i, j) +
                            (want ? " missing" : " given outside the domain"));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = t.star[i];
    if (s.index >= n) {
      r.fail("star-involution", t.labels[i] + " maps out of range");
      continue;
    }
    if (std::abs(std::abs(s.phase) - 1.0) > tol)
      r.fail("star-phase", t.labels[i] + " has a phase of modulus " + format_number(std::abs(s.phase)),
             std::abs(std::abs(s.phase) - 1.0));
    const auto& back = t.star[s.index];
    // e_i** = conj(p_i) p_{σi} e_{σσi}
    double res = std::abs(std::conj(s.phase) * back.phase - 1.0);
    r.observe(res);
    if (back.index != i || res > tol)
      r.fail("star-involution", t.labels[i], res);
  }
  return r;
}

Report check_star_compatibility(const StructureTable& t, double tol) {
  Report r;
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!t.domain[i][j]) continue;
      std::size_t si = t.star[i].index, sj = t.star[j].index;
      if (!t.domain[sj][si]) {
        r.fail("domain-symmetry", pair_text(t, i, j) + " defined but " + pair_text(t, sj, si) + " is not");
        continue;
      }
      Vector lhs(n, Complex{}), rhs(n, Complex{});
      for (std::size_t k = 0; k < n; ++k) {
        lhs[t.star[k].index] += std::conj(t.coeff[i][j][k]) * t.star[k].phase;
        rhs[k] = t.star[j].phase * t.star[i].phase * t.coeff[sj][si][k];
      }
      double res = 0.0;
      for (std::size_t k = 0; k < n; ++k) res = std::max(res, std::abs(lhs[k] - rhs[k]));
      r.observe(res);
      if (res > tol) r.fail("star-compatibility", pair_text(t, i, j), res);
    }
  return r;
}

std::vector<std::size_t> multiplier_indices(const StructureTable& t, Side side) {
  std::vector<std::size_t> out;
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    bool all = true;
    for (std::size_t j = 0; j < n && all; ++j) all = side == Side::left ? t.domain[i][j] : t.domain[j][i];
    if (all) out.push_back(i);
  }
  return out;
}

SubspaceBasis multiplier_subspace(const StructureTable& t, Side side) {
  SubspaceBasis b;
  for (std::size_t i : multiplier_indices(t, side)) {
    Vector v(t.dim(), Complex{});
    v[i] = 1.0;
    b.vectors.push_back(std::move(v));
  }
  return b;
}

Report ideal_closure_check(const StructureTable& t, double tol) {
  Report r;
  const std::size_t n = t.dim();
  std::vector<bool> in_left(n, false), in_right(n, false);
  for (std::size_t i : multiplier_indices(t, Side::left)) in_left[i] = true;
  for (std::size_t i : multiplier_indices(t, Side::right)) in_right[i] = true;

  auto check = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(t.coeff[a][b][k]) <= tol || (in_left[k] && in_right[k])) continue;
      r.fail("ideal-closure", pair_text(t, a, b) + " has support on " + t.labels[k],
             std::abs(t.coeff[a][b][k]));
      return;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_left[i] || !in_right[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      check(i, j);
      if (j != i) check(j, i);
    }
  }
  return r;
}

std::pair<std::vector<std::string>, std::vector<LabelPair>> extract_relation(const StructureTable& t) {
  std::vector<LabelPair> pairs;
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      if (t.domain[i][j]) pairs.emplace_back(t.labels[i], t.labels[j]);
  return {t.labels, pairs};
}

Vector multiply(const StructureTable& t, const Vector& u, const Vector& v) {
  const std::size_t n = t.dim();
  if (u.size() != n || v.size() != n) throw ShapeMismatch("vector length differs from the basis size");
  Vector out(n, Complex{});
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == Complex{}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == Complex{}) continue;
      if (!t.domain[i][j])
        throw DomainMismatch("product " + pair_text(t, i, j) + " is not defined");
      for (std::size_t k = 0; k < n; ++k) out[k] += u[i] * v[j] * t.coeff[i][j][k];
    }
  }
  return out;
}

Vector star_vector(const StructureTable& t, const Vector& u) {
  if (u.size() != t.dim()) throw ShapeMismatch("vector length differs from the basis size");
  Vector out(t.dim(), Complex{});
  for (std::size_t i = 0; i < u.size(); ++i) out[t.star[i].index] += std::conj(u[i]) * t.star[i].phase;
  return out;
}

StructureTable matrix_unit_table(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) labels.push_back("e" + std::to_string(a + 1) + std::to_string(b + 1));
  StructureTable t = StructureTable::with_basis(labels);
  auto at = [n](std::size_t a, std::size_t b) { return a * n + b; };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      t.star[at(a, b)] = {at(b, a), Complex(1.0, 0.0)};
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          Vector v(n * n, Complex{});
          if (b == c) v[at(a, d)] = 1.0;
          t.set_product(at(a, b), at(c, d), std::move(v));
        }
    }
  return t;
}

StructureTable groupoid_structure_table(const FiniteGroupoid& g) {
  StructureTable t = StructureTable::with_basis(g.arrow_labels());
  for (const auto& a : g.arrows()) {
    t.star[idx(a.id)] = {idx(g.inverse(a.id)), Complex(1.0, 0.0)};
    for (ArrowId b : g.target_fiber(a.src)) {
      Vector v(g.arrow_count(), Complex{});
      v[idx(g.compose(a.id, b))] = 1.0;
      t.set_product(idx(a.id), idx(b), std::move(v));
    }
  }
  return t;
}

} // namespace groupalg
