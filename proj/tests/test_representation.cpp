#include "catch_amalgamated.hpp"

#include "groupalg/constructions.hpp"
#include "groupalg/representation.hpp"
#include "oracles.hpp"

using namespace groupalg;

namespace {

ObjectMeasure random_measure(const FiniteGroupoid& g, SplitMix64& rng) {
  ObjectMeasure nu(g.object_count());
  double total = 0.0;
  for (auto& v : nu) total += v = rng.uniform(0.1, 1.0);
  for (auto& v : nu) v /= total;
  return nu;
}

Matrix random_unitary(std::size_t n, SplitMix64& rng) {
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_unit_box();
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

} // namespace

TEST_CASE("induced measures on pair groupoids") {
  FiniteGroupoid g = pair_groupoid(3);
  InducedMeasures uni = induced_measures(g, counting_haar(g), uniform_measure(g));
  for (std::size_t a = 0; a < g.arrow_count(); ++a) {
    CHECK(uni.delta[a] == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(uni.m_o[a] == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
  }
  ObjectMeasure nu{0.2, 0.3, 0.5};
  InducedMeasures im = induced_measures(g, counting_haar(g), nu);
  for (const auto& a : g.arrows()) {
    double t = nu[idx(a.tgt)], s = nu[idx(a.src)];
    CHECK(std::abs(im.delta[idx(a.id)] - t / s) <= 1e-12);
    CHECK(std::abs(im.m_o[idx(a.id)] - std::sqrt(t * s)) <= 1e-12);
    CHECK(std::abs(im.m_inv[idx(a.id)] - s) <= 1e-12);
  }
}

TEST_CASE("measure validation") {
  FiniteGroupoid g = pair_groupoid(2);
  CHECK(check_measure(g, {0.5, 0.5}).ok());
  CHECK(check_measure(g, {0.5}).mentions("nu-shape"));
  CHECK(check_measure(g, {1.0, 0.0}).mentions("nu-positive"));
  CHECK(check_measure(g, {0.5, 0.6}).mentions("nu-normalized"));
}

TEST_CASE("left regular matrix of an off-diagonal pair arrow") {
  FiniteGroupoid g = pair_groupoid(std::vector<std::string>{"a", "b"});
  Matrix m = left_regular(g, g.arrow("(a,b)"));
  // Γ(b,−) = [(b,a),(b,b)] is carried to Γ(a,−) = [(a,a),(a,b)] in order.
  CHECK(m == Matrix::Identity(2, 2));
  Matrix u = left_regular(g, g.arrow("(a,a)"));
  CHECK(u == Matrix::Identity(2, 2));
}

TEST_CASE("left regular matrices are permutations and multiply along composition") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng);
    for (const auto& a : g.arrows()) {
      Matrix m = left_regular(g, a.id);
      for (Eigen::Index j = 0; j < m.cols(); ++j) CHECK(m.col(j).sum() == Complex(1.0));
      for (Eigen::Index i = 0; i < m.rows(); ++i) CHECK(m.row(i).sum() == Complex(1.0));
    }
    for (int k = 0; k < 20; ++k) {
      ArrowId a = arrow_id(rng.below(g.arrow_count()));
      auto fibre = g.target_fiber(g.source(a));
      ArrowId b = fibre[rng.below(fibre.size())];
      CHECK(left_regular(g, g.compose(a, b)) == left_regular(g, a) * left_regular(g, b));
    }
    HaarSystem mu = oracle::random_invariant_haar(g, rng);
    Report r = check_representation(g, left_regular_rep(g, mu));
    CHECK(r.ok());
    CHECK(r.max_residual() == 0.0);
    CHECK(check_representation(g, trivial_rep(g)).ok());
    CHECK(r.notes() == std::vector<std::string>{"measurability: vacuous on a finite groupoid"});
  }
}

TEST_CASE("a transposed matrix breaks the representation") {
  FiniteGroupoid g = product(pair_groupoid(2), cyclic_group(3));
  BundleRep rep = left_regular_rep(g, counting_haar(g));
  ArrowId a = g.arrow("(0,0)*g");
  rep.op[idx(a)].transposeInPlace();
  Report r = check_representation(g, rep);
  CHECK(r.mentions("multiplicative"));
  CHECK(r.mentions("inverse"));
}

TEST_CASE("non-unitary operators are rejected") {
  FiniteGroupoid g = pair_groupoid(2);
  BundleRep rep = trivial_rep(g);
  rep.op[idx(g.arrow("(0,1)"))](0, 0) = 2.0;
  rep.op[idx(g.arrow("(1,0)"))](0, 0) = 0.5;
  Report r = check_representation(g, rep);
  CHECK(r.mentions("unitary"));
  CHECK_FALSE(r.mentions("inverse"));
}

TEST_CASE("integrated trivial representation on pair(2)") {
  FiniteGroupoid g = pair_groupoid(2);
  HaarSystem mu = counting_haar(g);
  ObjectMeasure nu = uniform_measure(g);
  BundleRep rep = trivial_rep(g);
  for (const auto& a : g.arrows()) {
    Matrix t = integrate_rep(g, mu, nu, rep, delta(g, a.id));
    // A single block: m_o(γ)/ν(tγ) = (1/2)/(1/2).
    CHECK(max_abs(t) == Catch::Approx(1.0));
    CHECK(t(static_cast<Eigen::Index>(idx(a.tgt)), static_cast<Eigen::Index>(idx(a.src))) ==
          Complex(1.0));
  }
  Matrix id = integrate_rep(g, mu, nu, rep, delta(g, g.unit(object_id(0))));
  CHECK(bundle_operator_norm(rep.bundle, nu, id) == Catch::Approx(1.0));
  CHECK(bundle_operator_norm(rep.bundle, nu, integrate_rep(g, mu, nu, rep, zero_function(g))) == 0.0);
}

TEST_CASE("unit deltas have norm equal to their weight") {
  FiniteGroupoid g = pair_groupoid(3);
  HaarSystem mu = source_weighted_haar(g, {0.5, 1.25, 2.0});
  ObjectMeasure nu{0.5, 0.25, 0.25};
  for (const BundleRep& rep : {trivial_rep(g), left_regular_rep(g, mu)})
    for (std::size_t x = 0; x < 3; ++x) {
      ArrowId u = g.unit(object_id(x));
      Matrix t = integrate_rep(g, mu, nu, rep, delta(g, u));
      CHECK(std::abs(bundle_operator_norm(rep.bundle, nu, t) - mu.weight[idx(u)]) <= 1e-12);
    }
}

TEST_CASE("integrated form is a bounded *-homomorphism") {
  SplitMix64 rng(303);
  std::size_t norm_tests = 0;
  for (int trial = 0; trial < 60; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng, 36);
    HaarSystem mu = rng.below(2) ? counting_haar(g) : oracle::random_invariant_haar(g, rng);
    ObjectMeasure nu = rng.below(2) ? uniform_measure(g) : random_measure(g, rng);
    for (const BundleRep& rep : {trivial_rep(g), left_regular_rep(g, mu)}) {
      GroupoidFunction f = oracle::random_function(g, rng), h = oracle::random_function(g, rng);
      Matrix pf = integrate_rep(g, mu, nu, rep, f), ph = integrate_rep(g, mu, nu, rep, h);
      Matrix pfh = integrate_rep(g, mu, nu, rep, convolve(g, mu, f, h));
      CHECK(max_abs(pfh - pf * ph) <= 1e-9 * std::max(1.0, max_abs(pfh)));
      Matrix pstar = integrate_rep(g, mu, nu, rep, involute(g, f));
      CHECK(max_abs(pstar - bundle_adjoint(rep.bundle, nu, pf)) <= 1e-9 * std::max(1.0, max_abs(pf)));
      CHECK(operator_norm_bound_check(g, mu, nu, rep, f).ok());
      ++norm_tests;
    }
  }
  CHECK(norm_tests >= 100);
}

TEST_CASE("norm bound against a dense oracle on pair(3)") {
  SplitMix64 rng(5);
  FiniteGroupoid g = pair_groupoid(3);
  HaarSystem mu = counting_haar(g);
  ObjectMeasure nu = uniform_measure(g);
  BundleRep rep = trivial_rep(g);
  for (int trial = 0; trial < 30; ++trial) {
    GroupoidFunction f = oracle::random_function(g, rng);
    // With uniform ν and counting weights the trivial picture is F/3 scaled
    // by 3: the plain matrix F.
    Matrix dense(3, 3);
    auto F = oracle::to_matrix(g, f);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dense(i, j) = F[i][j];
    double op = bundle_operator_norm(rep.bundle, nu, integrate_rep(g, mu, nu, rep, f));
    CHECK(std::abs(op - spectral_norm(dense)) <= 1e-12);
    CHECK(op <= i_norm(g, mu, f) + 1e-9);
  }
}

TEST_CASE("conjugating by a unitary field gives an equivalent representation") {
  SplitMix64 rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng, 30);
    HaarSystem mu = oracle::random_invariant_haar(g, rng);
    ObjectMeasure nu = random_measure(g, rng);
    BundleRep rep = left_regular_rep(g, mu);
    std::vector<Matrix> standard;
    for (std::size_t d : rep.bundle.dim) standard.push_back(random_unitary(d, rng));
    std::vector<Matrix> field = metric_unitaries(rep.bundle, standard);
    BundleRep other = conjugate_rep(g, rep, field);
    CHECK(check_representation(g, other, 1e-10).ok());
    Matrix u = block_diagonal(rep.bundle, field);
    GroupoidFunction f = oracle::random_function(g, rng);
    Matrix lhs = integrate_rep(g, mu, nu, other, f);
    Matrix rhs = u * integrate_rep(g, mu, nu, rep, f) * u.inverse();
    CHECK(max_abs(lhs - rhs) <= 1e-9);
    CHECK(std::abs(bundle_operator_norm(rep.bundle, nu, lhs) -
                   bundle_operator_norm(rep.bundle, nu, integrate_rep(g, mu, nu, rep, f))) <= 1e-9);
  }
}

TEST_CASE("integration rejects mismatched shapes") {
  FiniteGroupoid g = pair_groupoid(2);
  CHECK_THROWS_AS(integrate_rep(g, counting_haar(g), uniform_measure(g), trivial_rep(g), GroupoidFunction(3)),
                  ShapeMismatch);
  CHECK_THROWS_AS(integrate_rep(g, counting_haar(g), uniform_measure(g), trivial_rep(pair_groupoid(3)),
                                constant_function(g, 1.0)),
                  ShapeMismatch);
}
