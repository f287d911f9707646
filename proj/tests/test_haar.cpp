#include "catch_amalgamated.hpp"

#include "groupalg/constructions.hpp"
#include "groupalg/haar.hpp"
#include "oracles.hpp"

using namespace groupalg;

namespace {

constexpr double kExact = 1e-12;
constexpr double kAccumulated = 1e-9;

HaarSystem random_haar(const FiniteGroupoid& g, SplitMix64& rng) {
  return rng.below(2) ? counting_haar(g) : oracle::random_invariant_haar(g, rng);
}

} // namespace

TEST_CASE("every validated groupoid carries left-invariant weights") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng);
    CHECK(check_haar_positive(g, counting_haar(g)).ok());
    CHECK(check_left_invariance(g, counting_haar(g)).ok());
    HaarSystem mu = oracle::random_invariant_haar(g, rng);
    CHECK(check_haar_positive(g, mu).ok());
    CHECK(check_left_invariance(g, mu).ok());
  }
}

TEST_CASE("positivity and shape of weights") {
  FiniteGroupoid g = pair_groupoid(2);
  CHECK(check_haar_positive(g, HaarSystem{{1.0, 1.0, 1.0}}).mentions("haar-shape"));
  CHECK(check_haar_positive(g, HaarSystem{{1.0, 0.0, 1.0, 1.0}}).mentions("haar-positive"));
  CHECK(check_haar_positive(g, HaarSystem{{1.0, -2.0, 1.0, 1.0}}).mentions("haar-positive"));
}

TEST_CASE("a perturbed weight is named") {
  FiniteGroupoid g = pair_groupoid(std::vector<std::string>{"a", "b", "c"});
  HaarSystem mu = source_weighted_haar(g, {0.5, 1.25, 2.0});
  mu.weight[idx(g.arrow("(b,c)"))] *= 1.0 + 1e-6;
  Report r = check_left_invariance(g, mu);
  REQUIRE(r.violations().size() == 1);
  CHECK(r.violations()[0].check == "left-invariance");
  CHECK(r.violations()[0].witness.find("'(b,c)'") != std::string::npos);
  CHECK(r.violations()[0].residual == Catch::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("perturbations are caught on every fibre of size at least two") {
  SplitMix64 rng(55);
  std::size_t caught = 0, tried = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng);
    HaarSystem mu = random_haar(g, rng);
    ArrowId a = arrow_id(rng.below(g.arrow_count()));
    if (g.source_fiber(g.source(a)).size() < 3) continue;
    ++tried;
    double eps = std::pow(10.0, -rng.uniform(1.0, 6.0));
    mu.weight[idx(a)] *= 1.0 + eps;
    Report r = check_left_invariance(g, mu);
    bool named = false;
    for (const auto& v : r.violations())
      named = named || v.witness.find("'" + g.arrow_label(a) + "'") != std::string::npos;
    caught += named && r.violations().size() == 1;
  }
  CHECK(tried > 20);
  CHECK(caught == tried);
}

TEST_CASE("a two-arrow fibre tie reports both arrows") {
  FiniteGroupoid g = pair_groupoid(2);
  HaarSystem mu = counting_haar(g);
  mu.weight[idx(g.arrow("(0,1)"))] = 2.0;
  CHECK(check_left_invariance(g, mu).violations().size() == 2);
}

TEST_CASE("fibre integral of the constant function on pair(3)") {
  FiniteGroupoid g = pair_groupoid(3);
  auto fo = fiber_integrate(g, counting_haar(g), constant_function(g, 1.0));
  REQUIRE(fo.size() == 3);
  for (auto v : fo) CHECK(v == Complex(3.0));
}

TEST_CASE("pair groupoid convolution is the matrix product") {
  SplitMix64 rng(7);
  for (std::size_t n = 2; n <= 4; ++n) {
    FiniteGroupoid g = pair_groupoid(n);
    HaarSystem mu = counting_haar(g);
    for (int trial = 0; trial < 50; ++trial) {
      GroupoidFunction f = oracle::random_function(g, rng), h = oracle::random_function(g, rng);
      auto got = oracle::to_matrix(g, convolve(g, mu, f, h));
      auto want = oracle::matmul(oracle::to_matrix(g, f), oracle::to_matrix(g, h));
      CHECK(oracle::max_distance(got, want) <= kExact);
    }
  }
}

TEST_CASE("convolution matches the composable-pair oracle") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng);
    HaarSystem mu = random_haar(g, rng);
    GroupoidFunction f = oracle::random_function(g, rng), h = oracle::random_function(g, rng);
    CHECK(sup_distance(convolve(g, mu, f, h), oracle::convolve(g, mu, f, h)) <= kAccumulated);
  }
}

TEST_CASE("delta at a unit acts on its target fibre only") {
  FiniteGroupoid g = pair_groupoid(3);
  HaarSystem mu = counting_haar(g);
  SplitMix64 rng(4);
  GroupoidFunction h = oracle::random_function(g, rng);
  ObjectId x = object_id(1);
  GroupoidFunction out = convolve(g, mu, delta(g, g.unit(x)), h);
  for (const auto& a : g.arrows()) CHECK(out[idx(a.id)] == (a.tgt == x ? h[idx(a.id)] : Complex{}));
}

TEST_CASE("convolution algebra laws on random groupoids") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng, 40);
    HaarSystem mu = random_haar(g, rng);
    GroupoidFunction f = oracle::random_function(g, rng), h = oracle::random_function(g, rng),
                     k = oracle::random_function(g, rng);
    CHECK(sup_distance(convolve(g, mu, convolve(g, mu, f, h), k),
                       convolve(g, mu, f, convolve(g, mu, h, k))) <= kAccumulated);
    CHECK(sup_distance(involute(g, involute(g, f)), f) == 0.0);
    CHECK(sup_distance(involute(g, convolve(g, mu, f, h)),
                       convolve(g, mu, involute(g, h), involute(g, f))) <= kAccumulated);
    GroupoidFunction u = unit_element(g, mu);
    CHECK(sup_distance(convolve(g, mu, u, f), f) <= kExact);
    CHECK(sup_distance(convolve(g, mu, f, u), f) <= kExact);
    // I-norm: submultiplicative and invariant under the involution.
    CHECK(i_norm(g, mu, convolve(g, mu, f, h)) <= i_norm(g, mu, f) * i_norm(g, mu, h) * (1 + kAccumulated));
    CHECK(std::abs(i_norm(g, mu, involute(g, f)) - i_norm(g, mu, f)) <= kAccumulated);
    CHECK(std::abs(i_norm_t(g, mu, involute(g, f)) - i_norm_s(g, mu, f)) <= kAccumulated);
  }
}

TEST_CASE("i-norm of the constant function on pair(2)") {
  FiniteGroupoid g = pair_groupoid(2);
  CHECK(i_norm(g, counting_haar(g), constant_function(g, 1.0)) == 2.0);
  CHECK(i_norm(g, counting_haar(g), zero_function(g)) == 0.0);
  // Complex values enter through their modulus.
  CHECK(i_norm(g, counting_haar(g), constant_function(g, Complex(3.0, 4.0))) == Catch::Approx(10.0));
}

TEST_CASE("half-density inner product is the Frobenius product on pair groupoids") {
  SplitMix64 rng(9);
  FiniteGroupoid g = pair_groupoid(3);
  for (int trial = 0; trial < 20; ++trial) {
    GroupoidFunction f = oracle::random_function(g, rng), h = oracle::random_function(g, rng);
    auto F = oracle::to_matrix(g, f), H = oracle::to_matrix(g, h);
    Complex want{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) want += F[i][j] * std::conj(H[i][j]);
    CHECK(std::abs(half_density_inner(g, counting_haar(g), f, h) - want) <= kExact);
    CHECK(half_density_inner(g, counting_haar(g), f, f).real() > 0.0);
  }
}

TEST_CASE("uniform convergence implies I-norm convergence on a fixed support") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteGroupoid g = oracle::random_groupoid(rng);
    HaarSystem mu = random_haar(g, rng);
    std::vector<bool> support(g.arrow_count());
    for (std::size_t a = 0; a < support.size(); ++a) support[a] = rng.below(2) == 0;
    GroupoidFunction limit = oracle::random_function(g, rng);
    for (std::size_t a = 0; a < limit.size(); ++a)
      if (!support[a]) limit[a] = 0.0;
    std::vector<GroupoidFunction> net;
    for (int k = 1; k <= 20; ++k) {
      GroupoidFunction f = limit;
      for (std::size_t a = 0; a < f.size(); ++a)
        if (support[a]) f[a] += rng.complex_unit_box() / double(k * k);
      net.push_back(f);
    }
    CHECK(i_norm_convergence_check(g, mu, net, limit, support).ok());
    // The I-norm distance shrinks with the sup distance.
    GroupoidFunction d(limit.size());
    for (std::size_t a = 0; a < d.size(); ++a) d[a] = net.back()[a] - limit[a];
    CHECK(i_norm(g, mu, d) <= support_fibre_mass(g, mu, support) / 400.0 * 2.0 + 1e-12);
  }
}

TEST_CASE("convergence check rejects members off the support") {
  FiniteGroupoid g = pair_groupoid(2);
  std::vector<bool> support{true, false, false, true};
  GroupoidFunction limit = zero_function(g);
  GroupoidFunction stray = delta(g, arrow_id(1));
  Report r = i_norm_convergence_check(g, counting_haar(g), {stray}, limit, support);
  CHECK(r.mentions("support"));
}
