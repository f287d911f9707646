#include "groupalg/transitive.hpp"

#include <cmath>
#include <set>
#include <tuple>

namespace groupalg {

TransitiveDecomposition decompose_transitive(const FiniteGroupoid& g) {
  if (g.object_count() == 0 || !is_transitive(g))
    throw NotTransitive("groupoid has " + std::to_string(orbits(g).size()) + " orbits");
  TransitiveDecomposition d;
  d.base = object_id(0);
  d.isotropy = isotropy(g, d.base);
  d.trivializer.assign(g.object_count(), kNoArrow);
  d.trivializer[0] = g.unit(d.base);
  for (ArrowId a : g.source_fiber(d.base)) {
    std::size_t x = idx(g.target(a));
    if (d.trivializer[x] == kNoArrow) d.trivializer[x] = a;
  }
  for (const auto& a : g.arrows()) {
    ArrowId h = g.compose(g.compose(g.inverse(d.trivializer[idx(a.tgt)]), a.id), d.trivializer[idx(a.src)]);
    d.factor.push_back({a.tgt, h, a.src});
  }
  return d;
}

Report check_decomposition(const FiniteGroupoid& g, const TransitiveDecomposition& d) {
  Report r;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& a : g.arrows()) {
    const auto& f = d.factor.at(idx(a.id));
    if (g.target(f.g) != d.base || g.source(f.g) != d.base) {
      r.fail("factorization", "middle factor of '" + g.arrow_label(a.id) + "' is not in the isotropy group");
      continue;
    }
    ArrowId back = g.compose(g.compose(d.trivializer[idx(f.tgt)], f.g), g.inverse(d.trivializer[idx(f.src)]));
    if (back != a.id) r.fail("factorization", "'" + g.arrow_label(a.id) + "' does not recompose");
    if (!seen.insert({idx(f.tgt), idx(f.g), idx(f.src)}).second)
      r.fail("uniqueness", "'" + g.arrow_label(a.id) + "' repeats a factorization");
  }
  const std::size_t n = g.object_count();
  if (g.arrow_count() != n * n * d.isotropy.size())
    r.fail("dimension", std::to_string(g.arrow_count()) + " arrows but n^2|H| = " +
                            std::to_string(n * n * d.isotropy.size()));
  return r;
}

std::vector<Matrix> lemma_images(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                                 const TransitiveDecomposition& d) {
  const std::size_t n = g.object_count(), h = d.isotropy.size();
  std::vector<std::size_t> pos(g.arrow_count(), h);
  for (std::size_t k = 0; k < h; ++k) pos[idx(d.isotropy[k])] = k;

  std::vector<double> c(n);
  for (std::size_t x = 0; x < n; ++x) c[x] = mu.weight.at(idx(g.unit(object_id(x))));

  const auto size = static_cast<Eigen::Index>(n * h);
  std::vector<Matrix> out;
  for (const auto& a : g.arrows()) {
    const auto& f = d.factor[idx(a.id)];
    const std::size_t x = idx(f.tgt), y = idx(f.src);
    const double scale = std::sqrt(c[x] * c[y]) * std::sqrt(nu.at(y) / nu.at(x));
    Matrix m = Matrix::Zero(size, size);
    // λ(g) e_k = e_{g·k}
    for (std::size_t k = 0; k < h; ++k) {
      std::size_t row = pos[idx(g.compose(f.g, d.isotropy[k]))];
      m(static_cast<Eigen::Index>(x * h + row), static_cast<Eigen::Index>(y * h + k)) = scale;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::size_t matrix_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel_tol * s(0)) ++r;
  return r;
}

Report lemma_isomorphism_check(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                               double tol) {
  TransitiveDecomposition d = decompose_transitive(g);
  Report r = check_decomposition(g, d);
  if (!r.ok()) return r;

  const std::size_t n = g.object_count(), h = d.isotropy.size();
  std::vector<Matrix> phi = lemma_images(g, mu, nu, d);
  auto image = [&](const GroupoidFunction& f) {
    Matrix m = Matrix::Zero(phi[0].rows(), phi[0].cols());
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] != Complex{}) m += f[k] * phi[k];
    return m;
  };

  double worst = 0.0;
  std::string witness;
  for (const auto& a : g.arrows())
    for (const auto& b : g.arrows()) {
      GroupoidFunction prod = convolve(g, mu, delta(g, a.id), delta(g, b.id));
      double res = max_abs(image(prod) - phi[idx(a.id)] * phi[idx(b.id)]);
      if (res > worst) {
        worst = res;
        witness = "('" + g.arrow_label(a.id) + "','" + g.arrow_label(b.id) + "')";
      }
    }
  r.observe(worst);
  if (worst > tol) r.fail("structure-constants", witness, worst);

  // ν-weighted adjoint on L²(A,ν) ⊗ ℂ^|H|.
  HilbertBundle flat;
  for (std::size_t x = 0; x < n; ++x) {
    flat.dim.push_back(h);
    flat.metric.push_back(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(h)));
  }
  worst = 0.0;
  for (const auto& a : g.arrows()) {
    double res = max_abs(image(involute(g, delta(g, a.id))) - bundle_adjoint(flat, nu, phi[idx(a.id)]));
    if (res > worst) {
      worst = res;
      witness = "'" + g.arrow_label(a.id) + "'";
    }
  }
  r.observe(worst);
  if (worst > tol) r.fail("involution", witness, worst);

  const auto dim = static_cast<Eigen::Index>(n * n * h * h);
  Matrix stacked(dim, static_cast<Eigen::Index>(g.arrow_count()));
  for (std::size_t k = 0; k < phi.size(); ++k) stacked.col(static_cast<Eigen::Index>(k)) = phi[k].reshaped();
  std::size_t rank = matrix_rank(stacked);
  if (rank != g.arrow_count())
    r.fail("injective", "rank " + std::to_string(rank) + " < " + std::to_string(g.arrow_count()));
  if (rank != n * n * h)
    r.fail("surjective", "rank " + std::to_string(rank) + " != n^2|H| = " + std::to_string(n * n * h));
  return r;
}

Report fundamental_family_check(const FiniteGroupoid& g, const HaarSystem& mu,
                                const std::vector<GroupoidFunction>& family) {
  Report r;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    auto fibre = g.target_fiber(object_id(x));
    Matrix m(static_cast<Eigen::Index>(fibre.size()), static_cast<Eigen::Index>(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (family[j].size() != g.arrow_count()) throw ShapeMismatch("family member has the wrong length");
      for (std::size_t k = 0; k < fibre.size(); ++k)
        m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            family[j][idx(fibre[k])] * std::sqrt(mu.weight.at(idx(fibre[k])));
    }
    std::size_t rank = matrix_rank(m);
    if (rank < fibre.size())
      r.fail("spanning", "object '" + g.object_label(object_id(x)) + "': rank " + std::to_string(rank) +
                             " < " + std::to_string(fibre.size()));
  }
  return r;
}

} // namespace groupalg
