#include "groupalg/battery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "groupalg/bisection.hpp"
#include "groupalg/partial_algebra.hpp"
#include "groupalg/representation.hpp"
#include "groupalg/rng.hpp"
#include "groupalg/transitive.hpp"

namespace groupalg {

namespace {

using Status = BatteryLine::Status;

GroupoidFunction random_function(const FiniteGroupoid& g, SplitMix64& rng) {
  GroupoidFunction f(g.arrow_count());
  for (auto& v : f) v = rng.complex_unit_box();
  return f;
}

ObjectMeasure random_measure(std::size_t n, SplitMix64& rng) {
  ObjectMeasure nu(n);
  for (auto& v : nu) v = rng.uniform(0.5, 2.0);
  double total = std::accumulate(nu.begin(), nu.end(), 0.0);
  for (auto& v : nu) v /= total;
  return nu;
}

Matrix random_unitary(std::size_t n, SplitMix64& rng) {
  Matrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.complex_unit_box();
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ();
}

// Restriction of a document's Haar system and ν to one orbit, ν renormalized.
struct OrbitPiece {
  FiniteGroupoid g;
  HaarSystem mu;
  ObjectMeasure nu;
};

std::vector<OrbitPiece> orbit_pieces(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu) {
  std::vector<OrbitPiece> out;
  for (const auto& block : orbits(g)) {
    std::set<ObjectId> in(block.begin(), block.end());
    std::vector<ArrowId> arrows;
    for (const auto& a : g.arrows())
      if (in.count(a.tgt)) arrows.push_back(a.id);
    OrbitPiece p;
    p.g = subgroupoid(g, arrows);
    for (ArrowId a : arrows) p.mu.weight.push_back(mu.weight[idx(a)]);
    double total = 0.0;
    for (ObjectId x : block) total += nu[idx(x)];
    for (ObjectId x : block) p.nu.push_back(nu[idx(x)] / total);
    out.push_back(std::move(p));
  }
  return out;
}

class Runner {
public:
  Runner(const GroupoidDocument& doc, const BatteryOptions& opt)
      : doc_(doc), g_(doc.groupoid), opt_(opt), rng_(opt.seed) {}

  std::vector<BatteryLine> run();

private:
  // Runs one suite; exceptions become failures.
  void suite(const std::string& name, const std::function<Report()>& body) {
    BatteryLine line{name, Status::pass, 0.0, ""};
    try {
      Report r = body();
      line.residual = r.max_residual();
      if (!r.ok()) {
        line.status = Status::fail;
        const auto& vs = r.violations();
        for (std::size_t k = 0; k < std::min<std::size_t>(vs.size(), 4); ++k)
          line.detail += (k ? "; " : "") + vs[k].check + ": " + vs[k].witness;
        if (vs.size() > 4) line.detail += " (+" + std::to_string(vs.size() - 4) + " more)";
      } else if (!r.notes().empty()) {
        line.detail = r.notes().front();
      }
    } catch (const std::exception& e) {
      line.status = Status::fail;
      line.detail = e.what();
    }
    lines_.push_back(std::move(line));
  }

  void skip(const std::string& name, const std::string& why) {
    lines_.push_back({name, Status::skip, 0.0, why});
  }

  // Records `residual` against `tol` under a named check.
  static void bound(Report& r, const std::string& check, const std::string& witness, double residual, double tol) {
    r.observe(residual);
    if (residual > tol) r.fail(check, witness, residual);
  }

  void algebra_suites();
  void representation_suites();
  void structural_suites();

  const GroupoidDocument& doc_;
  const FiniteGroupoid& g_;
  BatteryOptions opt_;
  SplitMix64 rng_;
  HaarSystem mu_;
  ObjectMeasure nu_;
  std::vector<BatteryLine> lines_;
};

std::vector<BatteryLine> Runner::run() {
  suite("groupoid-axioms", [&] { return validate(g_); });
  if (lines_.back().status == Status::fail) {
    for (const char* name : {"haar", "nu", "involution-as-inverse", "multipliers", "fibres-and-orbits",
                             "isotropy-bundle", "bisection-group", "convolution-associativity",
                             "involution-antihomomorphism", "unit-element", "i-norm", "i-norm-convergence",
                             "half-density-inner", "trivial-representation", "left-regular-representation",
                             "integrated-homomorphism", "integrated-adjoint", "norm-bound", "unitary-equivalence",
                             "transitive-decomposition", "lemma-isomorphism", "fundamental-family",
                             "partial-algebra", "round-trip"})
      skip(name, "groupoid axioms fail");
    return lines_;
  }
  mu_ = doc_.effective_haar();
  nu_ = doc_.effective_nu();

  suite("haar", [&] {
    Report r = check_haar_positive(g_, mu_);
    if (r.ok()) r.merge(check_left_invariance(g_, mu_, opt_.tol.exact));
    if (!doc_.haar) r.note("counting weights");
    return r;
  });
  suite("nu", [&] {
    Report r = check_measure(g_, nu_, opt_.tol.accumulated);
    if (!doc_.nu) r.note("uniform measure");
    return r;
  });
  structural_suites();
  algebra_suites();
  representation_suites();
  return lines_;
}

void Runner::structural_suites() {
  suite("involution-as-inverse", [&] {
    Report r;
    for (const auto& a : g_.arrows()) {
      ArrowId inv = g_.inverse(a.id);
      if (g_.inverse(inv) != a.id) r.fail("involutive", "'" + g_.arrow_label(a.id) + "'");
      if (g_.target(inv) != a.src || g_.source(inv) != a.tgt) r.fail("endpoint-swap", "'" + g_.arrow_label(a.id) + "'");
    }
    return r;
  });

  if (is_relation_groupoid(g_)) {
    suite("multipliers", [&] {
      MultiplierSets m = multipliers(g_);
      Report r = m.closure;
      r.note("left " + std::to_string(m.left.size()) + ", right " + std::to_string(m.right.size()) + ", ideal " +
             std::to_string(m.ideal.size()));
      return r;
    });
  } else {
    skip("multipliers", "nontrivial isotropy");
  }

  suite("fibres-and-orbits", [&] {
    Report r;
    for (std::size_t x = 0; x < g_.object_count(); ++x) {
      std::vector<ArrowId> t, s;
      for (const auto& a : g_.arrows()) {
        if (idx(a.tgt) == x) t.push_back(a.id);
        if (idx(a.src) == x) s.push_back(a.id);
      }
      auto tf = g_.target_fiber(object_id(x));
      auto sf = g_.source_fiber(object_id(x));
      if (!std::equal(t.begin(), t.end(), tf.begin(), tf.end()) ||
          !std::equal(s.begin(), s.end(), sf.begin(), sf.end()))
        r.fail("fibre-sets", "object '" + g_.object_label(object_id(x)) + "'");
    }
    std::vector<int> seen(g_.object_count(), 0);
    for (const auto& block : orbits(g_)) {
      for (ObjectId x : block) ++seen[idx(x)];
      for (ObjectId x : block) {
        if (g_.target_fiber(x).size() != g_.target_fiber(block[0]).size())
          r.fail("fibre-size", "object '" + g_.object_label(x) + "'");
        if (g_.arrows_between(block[0], x).empty()) r.fail("orbit-reachability", "object '" + g_.object_label(x) + "'");
      }
    }
    for (std::size_t x = 0; x < seen.size(); ++x)
      if (seen[x] != 1) r.fail("partition", "object '" + g_.object_label(object_id(x)) + "'");
    return r;
  });

  suite("isotropy-bundle", [&] {
    FiniteGroupoid xi = isotropy_bundle(g_);
    Report r = validate(xi);
    if (orbits(xi).size() != xi.object_count()) r.fail("orbits", "isotropy bundle is not totally intransitive");
    std::size_t loops = 0;
    for (std::size_t x = 0; x < g_.object_count(); ++x) loops += isotropy(g_, object_id(x)).size();
    if (xi.arrow_count() != loops) r.fail("size", "isotropy bundle has " + std::to_string(xi.arrow_count()) + " arrows");
    return r;
  });

  std::vector<Bisection> bis;
  try {
    bis = enumerate_bisections(g_, 5040);
  } catch (const Error&) {
  }
  if (bis.empty() && g_.object_count() > 0) {
    skip("bisection-group", "more than 5040 full bisections");
  } else {
    suite("bisection-group", [&] {
      Report r;
      std::map<std::vector<std::optional<ArrowId>>, std::size_t> index;
      for (std::size_t k = 0; k < bis.size(); ++k) index[bis[k].pick] = k;
      Bisection e = unit_bisection(g_);
      if (!index.count(e.pick)) r.fail("identity", "unit bisection not enumerated");
      auto perm = [&](const Bisection& s) { return target_permutation(g_, s); };
      auto check_pair = [&](const Bisection& s, const Bisection& t) {
        Bisection st = bisection_compose(g_, s, t);
        if (!index.count(st.pick)) r.fail("closure", "product leaves the enumerated set");
        auto ps = perm(s), pt = perm(t), pst = perm(st);
        for (std::size_t x = 0; x < pst.size(); ++x)
          if (pst[x] != ps[idx(*pt[x])]) {
            r.fail("target-homomorphism", "object '" + g_.object_label(object_id(x)) + "'");
            break;
          }
      };
      const bool exhaustive = bis.size() <= 120;
      const std::size_t pairs = exhaustive ? bis.size() * bis.size() : opt_.trials;
      for (std::size_t k = 0; k < pairs; ++k) {
        std::size_t i = exhaustive ? k / bis.size() : rng_.below(bis.size());
        std::size_t j = exhaustive ? k % bis.size() : rng_.below(bis.size());
        check_pair(bis[i], bis[j]);
      }
      for (std::size_t k = 0; k < std::min(opt_.trials, bis.size() * bis.size() * bis.size()); ++k) {
        const auto& a = bis[rng_.below(bis.size())];
        const auto& b = bis[rng_.below(bis.size())];
        const auto& c = bis[rng_.below(bis.size())];
        if (bisection_compose(g_, bisection_compose(g_, a, b), c) != bisection_compose(g_, a, bisection_compose(g_, b, c)))
          r.fail("associativity", "random triple " + std::to_string(k));
      }
      for (const auto& s : bis) {
        if (bisection_compose(g_, s, e) != s || bisection_compose(g_, e, s) != s) r.fail("identity", "unit law");
        Bisection inv = bisection_inverse(g_, s);
        if (bisection_compose(g_, s, inv) != e || bisection_compose(g_, inv, s) != e) r.fail("inverse", "inverse law");
        for (const auto& a : g_.arrows())
          if (g_.source(left_translate(g_, s, a.id)) != a.src) r.fail("translation", "source fibre not preserved");
      }
      r.note(std::to_string(bis.size()) + " full bisections");
      return r;
    });
  }
}

void Runner::algebra_suites() {
  const double ex = opt_.tol.exact, acc = opt_.tol.accumulated;
  const std::size_t trials = opt_.trials;

  suite("convolution-associativity", [&] {
    Report r;
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_), h = random_function(g_, rng_), q = random_function(g_, rng_);
      double res = sup_distance(convolve(g_, mu_, convolve(g_, mu_, f, h), q), convolve(g_, mu_, f, convolve(g_, mu_, h, q)));
      bound(r, "associativity", "trial " + std::to_string(k), res, acc);
    }
    return r;
  });
  suite("involution-antihomomorphism", [&] {
    Report r;
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_), h = random_function(g_, rng_);
      double res = sup_distance(involute(g_, convolve(g_, mu_, f, h)), convolve(g_, mu_, involute(g_, h), involute(g_, f)));
      bound(r, "(f*g)* = g* * f*", "trial " + std::to_string(k), res, ex);
      bound(r, "f** = f", "trial " + std::to_string(k), sup_distance(involute(g_, involute(g_, f)), f), ex);
    }
    return r;
  });
  suite("unit-element", [&] {
    Report r;
    GroupoidFunction u = unit_element(g_, mu_);
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_);
      bound(r, "u*f = f", "trial " + std::to_string(k), sup_distance(convolve(g_, mu_, u, f), f), ex);
      bound(r, "f*u = f", "trial " + std::to_string(k), sup_distance(convolve(g_, mu_, f, u), f), ex);
    }
    return r;
  });
  suite("i-norm", [&] {
    Report r;
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_), h = random_function(g_, rng_);
      double nf = i_norm(g_, mu_, f), nh = i_norm(g_, mu_, h);
      bound(r, "submultiplicative", "trial " + std::to_string(k),
            std::max(0.0, i_norm(g_, mu_, convolve(g_, mu_, f, h)) - nf * nh), acc);
      bound(r, "involution-isometry", "trial " + std::to_string(k), std::abs(i_norm(g_, mu_, involute(g_, f)) - nf), acc);
      Complex c = rng_.complex_unit_box();
      GroupoidFunction cf(f.size());
      for (std::size_t a = 0; a < f.size(); ++a) cf[a] = c * f[a];
      bound(r, "homogeneity", "trial " + std::to_string(k), std::abs(i_norm(g_, mu_, cf) - std::abs(c) * nf), acc);
    }
    return r;
  });
  suite("i-norm-convergence", [&] {
    Report r;
    for (std::size_t k = 0; k < trials; ++k) {
      std::vector<bool> support(g_.arrow_count());
      for (std::size_t a = 0; a < support.size(); ++a) support[a] = rng_.uniform() < 0.6;
      auto mask = [&](GroupoidFunction f) {
        for (std::size_t a = 0; a < f.size(); ++a)
          if (!support[a]) f[a] = 0.0;
        return f;
      };
      GroupoidFunction f = mask(random_function(g_, rng_)), h = mask(random_function(g_, rng_));
      std::vector<GroupoidFunction> net;
      for (int j = 1; j <= 8; ++j) {
        GroupoidFunction fk(f.size());
        for (std::size_t a = 0; a < f.size(); ++a) fk[a] = f[a] + h[a] / static_cast<double>(1 << j);
        net.push_back(std::move(fk));
      }
      r.merge(i_norm_convergence_check(g_, mu_, net, f, support, ex));
    }
    return r;
  });
  suite("half-density-inner", [&] {
    Report r;
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_), h = random_function(g_, rng_);
      Complex ff = half_density_inner(g_, mu_, f, f);
      if (ff.real() <= 0.0) r.fail("definite", "trial " + std::to_string(k));
      bound(r, "real", "trial " + std::to_string(k), std::abs(ff.imag()), ex);
      bound(r, "hermitian", "trial " + std::to_string(k),
            std::abs(half_density_inner(g_, mu_, f, h) - std::conj(half_density_inner(g_, mu_, h, f))), ex);
    }
    Complex zero = half_density_inner(g_, mu_, zero_function(g_), zero_function(g_));
    if (zero != Complex{}) r.fail("definite", "zero function");
    return r;
  });
}

void Runner::representation_suites() {
  const double ex = opt_.tol.exact, acc = opt_.tol.accumulated;
  const std::size_t trials = opt_.trials;
  BundleRep triv = trivial_rep(g_);
  BundleRep lreg = left_regular_rep(g_, mu_);

  suite("trivial-representation", [&] { return check_representation(g_, triv, ex); });
  suite("left-regular-representation", [&] {
    Report r = check_representation(g_, lreg, ex);
    for (const auto& m : lreg.op)
      for (Eigen::Index i = 0; i < m.size(); ++i)
        if (m.data()[i] != Complex(0.0) && m.data()[i] != Complex(1.0)) {
          r.fail("zero-one", "non 0/1 entry");
          return r;
        }
    return r;
  });

  ObjectMeasure skewed = random_measure(g_.object_count(), rng_);
  struct Case {
    const char* rep;
    const BundleRep* r;
    const ObjectMeasure* nu;
    const char* measure;
  };
  std::vector<Case> cases{{"trivial", &triv, &nu_, "file"},
                          {"left-regular", &lreg, &nu_, "file"},
                          {"trivial", &triv, &skewed, "random"},
                          {"left-regular", &lreg, &skewed, "random"}};
  const std::size_t per_case = std::max<std::size_t>(1, trials / cases.size());

  suite("integrated-homomorphism", [&] {
    Report r;
    for (const auto& c : cases)
      for (std::size_t k = 0; k < per_case; ++k) {
        auto f = random_function(g_, rng_), h = random_function(g_, rng_);
        Matrix pf = integrate_rep(g_, mu_, *c.nu, *c.r, f), ph = integrate_rep(g_, mu_, *c.nu, *c.r, h);
        double res = max_abs(integrate_rep(g_, mu_, *c.nu, *c.r, convolve(g_, mu_, f, h)) - pf * ph);
        bound(r, "pi(f*g) = pi(f)pi(g)", std::string(c.rep) + "/" + c.measure + " trial " + std::to_string(k), res, acc);
      }
    return r;
  });
  suite("integrated-adjoint", [&] {
    Report r;
    for (const auto& c : cases)
      for (std::size_t k = 0; k < per_case; ++k) {
        auto f = random_function(g_, rng_);
        Matrix pf = integrate_rep(g_, mu_, *c.nu, *c.r, f);
        double res = max_abs(integrate_rep(g_, mu_, *c.nu, *c.r, involute(g_, f)) - bundle_adjoint(c.r->bundle, *c.nu, pf));
        bound(r, "pi(f*) = pi(f)^adj", std::string(c.rep) + "/" + c.measure + " trial " + std::to_string(k), res, ex);
      }
    return r;
  });
  suite("norm-bound", [&] {
    Report r;
    for (const auto& c : cases)
      for (std::size_t k = 0; k < per_case; ++k)
        r.merge(operator_norm_bound_check(g_, mu_, *c.nu, *c.r, random_function(g_, rng_), acc));
    return r;
  });
  suite("unitary-equivalence", [&] {
    Report r;
    for (std::size_t k = 0; k < std::max<std::size_t>(1, trials / 10); ++k) {
      std::vector<Matrix> standard;
      for (std::size_t d : lreg.bundle.dim) standard.push_back(random_unitary(d, rng_));
      std::vector<Matrix> field = metric_unitaries(lreg.bundle, standard);
      BundleRep conj = conjugate_rep(g_, lreg, field);
      Report rep = check_representation(g_, conj, acc);
      for (const auto& v : rep.violations()) r.fail("conjugated-" + v.check, v.witness, v.residual);
      Matrix u = block_diagonal(lreg.bundle, field);
      auto f = random_function(g_, rng_);
      Matrix lhs = integrate_rep(g_, mu_, skewed, conj, f);
      Matrix rhs = u * integrate_rep(g_, mu_, skewed, lreg, f) * u.inverse();
      bound(r, "pi equivalence", "trial " + std::to_string(k), max_abs(lhs - rhs), acc);
      bound(r, "U unitary", "trial " + std::to_string(k),
            max_abs(bundle_adjoint(lreg.bundle, skewed, u) * u - Matrix::Identity(u.rows(), u.cols())), acc);
    }
    return r;
  });

  std::vector<OrbitPiece> pieces = orbit_pieces(g_, mu_, nu_);
  suite("transitive-decomposition", [&] {
    Report r;
    for (const auto& p : pieces) r.merge(check_decomposition(p.g, decompose_transitive(p.g)));
    if (pieces.size() > 1) r.note("checked on " + std::to_string(pieces.size()) + " orbits");
    return r;
  });
  suite("lemma-isomorphism", [&] {
    Report r;
    for (const auto& p : pieces) {
      r.merge(lemma_isomorphism_check(p.g, counting_haar(p.g), p.nu, ex));
      r.merge(lemma_isomorphism_check(p.g, p.mu, p.nu, ex));
    }
    if (pieces.size() > 1) r.note("checked on " + std::to_string(pieces.size()) + " orbits");
    return r;
  });
  suite("fundamental-family", [&] {
    std::vector<GroupoidFunction> family;
    for (const auto& a : g_.arrows()) family.push_back(delta(g_, a.id));
    Report r = fundamental_family_check(g_, mu_, family);
    std::vector<GroupoidFunction> single{constant_function(g_, 1.0)};
    bool wide = false;
    for (std::size_t x = 0; x < g_.object_count(); ++x) wide = wide || g_.target_fiber(object_id(x)).size() > 1;
    if (wide && fundamental_family_check(g_, mu_, single).ok())
      r.fail("deficiency", "a single function spans a fibre of dimension > 1");
    return r;
  });
  suite("partial-algebra", [&] {
    StructureTable t = groupoid_structure_table(g_);
    Report r = check_structure(t, ex);
    r.merge(check_star_compatibility(t, ex));
    // Counting-weight convolution agrees with the table's bilinear product.
    HaarSystem counting = counting_haar(g_);
    for (std::size_t k = 0; k < trials; ++k) {
      auto f = random_function(g_, rng_), h = random_function(g_, rng_);
      Vector prod(g_.arrow_count(), Complex{});
      for (const auto& a : g_.arrows())
        for (ArrowId b : g_.target_fiber(a.src)) {
          Vector u(g_.arrow_count(), Complex{}), v(g_.arrow_count(), Complex{});
          u[idx(a.id)] = f[idx(a.id)];
          v[idx(b)] = h[idx(b)];
          Vector p = multiply(t, u, v);
          for (std::size_t c = 0; c < p.size(); ++c) prod[c] += p[c];
        }
      bound(r, "table = convolution", "trial " + std::to_string(k), sup_distance(prod, convolve(g_, counting, f, h)), acc);
      bound(r, "star = involution", "trial " + std::to_string(k), sup_distance(star_vector(t, f), involute(g_, f)), ex);
    }
    return r;
  });
  suite("round-trip", [&] {
    Report r;
    GroupoidDocument back = parse_groupoid(write_groupoid(doc_));
    GroupoidTables a = g_.tables(), b = back.groupoid.tables();
    bool same = a.objects == b.objects && a.arrow_labels == b.arrow_labels && a.tgt == b.tgt && a.src == b.src &&
                a.units == b.units && a.inverse == b.inverse && a.compose.size() == b.compose.size();
    for (std::size_t k = 0; same && k < a.compose.size(); ++k)
      same = a.compose[k].first == b.compose[k].first && a.compose[k].second == b.compose[k].second &&
             a.compose[k].result == b.compose[k].result;
    if (!same) r.fail("groupoid", "tables differ after write/read");
    if ((doc_.haar.has_value() != back.haar.has_value()) || (doc_.haar && doc_.haar->weight != back.haar->weight))
      r.fail("haar", "weights differ after write/read");
    if (doc_.nu != back.nu) r.fail("nu", "measure differs after write/read");
    for (std::size_t k = 0; k < std::max<std::size_t>(1, trials / 10); ++k) {
      auto f = random_function(g_, rng_);
      for (auto& v : f) v *= std::exp(rng_.uniform(-30.0, 30.0));
      if (parse_function(write_function(g_, f), g_) != f) r.fail("function", "values differ after write/read");
    }
    return r;
  });
}

} // namespace

std::vector<BatteryLine> run_battery(const GroupoidDocument& doc, const BatteryOptions& opt) {
  return Runner(doc, opt).run();
}

bool battery_passed(const std::vector<BatteryLine>& lines) {
  for (const auto& l : lines)
    if (l.status == BatteryLine::Status::fail) return false;
  return true;
}

std::string format_battery(const std::vector<BatteryLine>& lines) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& l : lines) width = std::max(width, l.name.size());
  for (const auto& l : lines) {
    const char* tag = l.status == BatteryLine::Status::pass ? "PASS" : l.status == BatteryLine::Status::fail ? "FAIL" : "SKIP";
    os << tag << "  " << l.name << std::string(width - l.name.size(), ' ');
    if (l.status != BatteryLine::Status::skip) os << "  max_residual=" << format_number(l.residual);
    if (!l.detail.empty()) os << "  " << l.detail;
    os << "\n";
  }
  return os.str();
}

} // namespace groupalg
