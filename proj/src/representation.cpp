#include "groupalg/representation.hpp"

#include <cmath>
#include <numeric>

namespace groupalg {

namespace {

void require_measure(const FiniteGroupoid& g, const ObjectMeasure& nu) {
  if (nu.size() != g.object_count()) throw ShapeMismatch("one measure value per object expected");
}

std::string pair_text(const FiniteGroupoid& g, ArrowId a, ArrowId b) {
  return "('" + g.arrow_label(a) + "','" + g.arrow_label(b) + "')";
}

} // namespace

ObjectMeasure uniform_measure(const FiniteGroupoid& g) {
  return ObjectMeasure(g.object_count(), 1.0 / static_cast<double>(g.object_count()));
}

Report check_measure(const FiniteGroupoid& g, const ObjectMeasure& nu, double tol) {
  Report r;
  if (nu.size() != g.object_count()) {
    r.fail("nu-shape", std::to_string(nu.size()) + " values for " + std::to_string(g.object_count()) +
                           " objects");
    return r;
  }
  double total = 0.0;
  for (std::size_t x = 0; x < nu.size(); ++x) {
    if (!(nu[x] > 0.0) || !std::isfinite(nu[x]))
      r.fail("nu-positive", "object '" + g.object_label(object_id(x)) + "' has mass " + format_number(nu[x]));
    total += nu[x];
  }
  r.observe(std::abs(total - 1.0));
  if (std::abs(total - 1.0) > tol) r.fail("nu-normalized", "total mass " + format_number(total), std::abs(total - 1.0));
  return r;
}

InducedMeasures induced_measures(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu) {
  require_measure(g, nu);
  if (mu.weight.size() != g.arrow_count()) throw ShapeMismatch("Haar system has the wrong number of weights");
  InducedMeasures im;
  const std::size_t n = g.arrow_count();
  im.m.resize(n);
  for (const auto& a : g.arrows()) im.m[idx(a.id)] = nu[idx(a.tgt)] * mu.weight[idx(a.id)];
  im.m_inv.resize(n);
  im.delta.resize(n);
  im.m_o.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    im.m_inv[k] = im.m[idx(g.inverse(arrow_id(k)))];
    im.delta[k] = im.m[k] / im.m_inv[k];
    im.m_o[k] = std::sqrt(im.m[k] * im.m_inv[k]);
  }
  return im;
}

HilbertBundle canonical_bundle(const FiniteGroupoid& g, const HaarSystem& mu) {
  HilbertBundle b;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    auto fibre = g.target_fiber(object_id(x));
    b.dim.push_back(fibre.size());
    Eigen::VectorXd w(fibre.size());
    for (std::size_t k = 0; k < fibre.size(); ++k) w[k] = mu.weight.at(idx(fibre[k]));
    b.metric.push_back(std::move(w));
  }
  return b;
}

BundleRep trivial_rep(const FiniteGroupoid& g) {
  BundleRep rep;
  rep.bundle.dim.assign(g.object_count(), 1);
  rep.bundle.metric.assign(g.object_count(), Eigen::VectorXd::Ones(1));
  rep.op.assign(g.arrow_count(), Matrix::Ones(1, 1));
  return rep;
}

Matrix left_regular(const FiniteGroupoid& g, ArrowId gamma) {
  auto from = g.target_fiber(g.source(gamma));
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(g.target_fiber(g.target(gamma)).size()),
                          static_cast<Eigen::Index>(from.size()));
  for (std::size_t k = 0; k < from.size(); ++k) {
    ArrowId image = g.compose(gamma, from[k]);
    m(static_cast<Eigen::Index>(g.target_fiber_position(image)), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return m;
}

BundleRep left_regular_rep(const FiniteGroupoid& g, const HaarSystem& mu) {
  BundleRep rep;
  rep.bundle = canonical_bundle(g, mu);
  for (const auto& a : g.arrows()) rep.op.push_back(left_regular(g, a.id));
  return rep;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Report check_representation(const FiniteGroupoid& g, const BundleRep& rep, double tol) {
  Report r;
  const auto& b = rep.bundle;
  if (b.dim.size() != g.object_count() || b.metric.size() != g.object_count() ||
      rep.op.size() != g.arrow_count()) {
    r.fail("shape", "representation tables do not match the groupoid");
    return r;
  }
  for (std::size_t x = 0; x < b.dim.size(); ++x)
    if (static_cast<std::size_t>(b.metric[x].size()) != b.dim[x]) {
      r.fail("shape", "metric of '" + g.object_label(object_id(x)) + "' has the wrong size");
      return r;
    }
  for (const auto& a : g.arrows()) {
    const Matrix& m = rep.op[idx(a.id)];
    if (static_cast<std::size_t>(m.rows()) != b.dim[idx(a.tgt)] ||
        static_cast<std::size_t>(m.cols()) != b.dim[idx(a.src)]) {
      r.fail("shape", "matrix of '" + g.arrow_label(a.id) + "' has the wrong shape");
      return r;
    }
  }

  auto record = [&](const char* check, const std::string& witness, double res, bool& first) {
    r.observe(res);
    if (res > tol && first) {
      r.fail(check, witness, res);
      first = false;
    }
  };

  bool first = true;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    const Matrix& u = rep.op[idx(g.unit(object_id(x)))];
    Matrix id = Matrix::Identity(u.rows(), u.cols());
    record("unit", "object '" + g.object_label(object_id(x)) + "'", max_abs(u - id), first);
  }
  first = true;
  for (const auto& a : g.arrows())
    for (ArrowId c : g.target_fiber(a.src)) {
      ArrowId ac = g.compose(a.id, c);
      double res = max_abs(rep.op[idx(ac)] - rep.op[idx(a.id)] * rep.op[idx(c)]);
      record("multiplicative", pair_text(g, a.id, c), res, first);
    }
  first = true;
  for (const auto& a : g.arrows()) {
    const Matrix& m = rep.op[idx(a.id)];
    const Matrix& inv = rep.op[idx(g.inverse(a.id))];
    Matrix id = Matrix::Identity(m.rows(), m.rows());
    record("inverse", "arrow '" + g.arrow_label(a.id) + "'", max_abs(m * inv - id), first);
  }
  first = true;
  for (const auto& a : g.arrows()) {
    // ℓ(γ)† W_t ℓ(γ) = W_s
    const Matrix& m = rep.op[idx(a.id)];
    Matrix wt = b.metric[idx(a.tgt)].cast<Complex>().asDiagonal();
    Matrix ws = b.metric[idx(a.src)].cast<Complex>().asDiagonal();
    double scale = std::max(1.0, b.metric[idx(a.src)].cwiseAbs().maxCoeff());
    record("unitary", "arrow '" + g.arrow_label(a.id) + "'", max_abs(m.adjoint() * wt * m - ws) / scale,
           first);
  }
  r.note("measurability: vacuous on a finite groupoid");
  return r;
}

std::vector<std::size_t> block_offsets(const HilbertBundle& bundle) {
  std::vector<std::size_t> off{0};
  for (std::size_t d : bundle.dim) off.push_back(off.back() + d);
  return off;
}

Eigen::VectorXd bundle_metric(const HilbertBundle& bundle, const ObjectMeasure& nu) {
  auto off = block_offsets(bundle);
  Eigen::VectorXd m(static_cast<Eigen::Index>(off.back()));
  for (std::size_t x = 0; x < bundle.dim.size(); ++x)
    for (std::size_t k = 0; k < bundle.dim[x]; ++k)
      m[static_cast<Eigen::Index>(off[x] + k)] = nu.at(x) * bundle.metric[x][static_cast<Eigen::Index>(k)];
  return m;
}

Matrix integrate_rep(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                     const BundleRep& rep, const GroupoidFunction& f) {
  if (f.size() != g.arrow_count()) throw ShapeMismatch("function length differs from the arrow count");
  if (rep.op.size() != g.arrow_count() || rep.bundle.dim.size() != g.object_count())
    throw ShapeMismatch("representation does not match the groupoid");
  InducedMeasures im = induced_measures(g, mu, nu);
  auto off = block_offsets(rep.bundle);
  const auto total = static_cast<Eigen::Index>(off.back());
  Matrix t = Matrix::Zero(total, total);
  for (const auto& a : g.arrows()) {
    const Complex c = f[idx(a.id)];
    if (c == Complex{}) continue;
    const Matrix& m = rep.op[idx(a.id)];
    const std::size_t x = idx(a.tgt), y = idx(a.src);
    if (static_cast<std::size_t>(m.rows()) != rep.bundle.dim[x] ||
        static_cast<std::size_t>(m.cols()) != rep.bundle.dim[y])
      throw ShapeMismatch("matrix of '" + g.arrow_label(a.id) + "' has the wrong shape");
    t.block(static_cast<Eigen::Index>(off[x]), static_cast<Eigen::Index>(off[y]), m.rows(), m.cols()) +=
        (c * (im.m_o[idx(a.id)] / nu[x])) * m;
  }
  return t;
}

Matrix bundle_adjoint(const HilbertBundle& bundle, const ObjectMeasure& nu, const Matrix& t) {
  Eigen::VectorXd m = bundle_metric(bundle, nu);
  return m.cwiseInverse().cast<Complex>().asDiagonal() * t.adjoint() * m.cast<Complex>().asDiagonal();
}

double bundle_operator_norm(const HilbertBundle& bundle, const ObjectMeasure& nu, const Matrix& t) {
  Eigen::VectorXd s = bundle_metric(bundle, nu).cwiseSqrt();
  Matrix scaled = s.cast<Complex>().asDiagonal() * t * s.cwiseInverse().cast<Complex>().asDiagonal();
  return spectral_norm(scaled);
}

Report operator_norm_bound_check(const FiniteGroupoid& g, const HaarSystem& mu, const ObjectMeasure& nu,
                                 const BundleRep& rep, const GroupoidFunction& f, double tol) {
  Report r;
  double op = bundle_operator_norm(rep.bundle, nu, integrate_rep(g, mu, nu, rep, f));
  double bound = i_norm(g, mu, f);
  r.observe(std::max(0.0, op - bound));
  if (op > bound + tol)
    r.fail("norm-bound", format_number(op) + " > " + format_number(bound), op - bound);
  return r;
}

BundleRep conjugate_rep(const FiniteGroupoid& g, const BundleRep& rep, const std::vector<Matrix>& field) {
  if (field.size() != g.object_count()) throw ShapeMismatch("one operator per object expected");
  BundleRep out;
  out.bundle = rep.bundle;
  for (const auto& a : g.arrows())
    out.op.push_back(field[idx(a.tgt)] * rep.op[idx(a.id)] * field[idx(a.src)].inverse());
  return out;
}

Matrix block_diagonal(const HilbertBundle& bundle, const std::vector<Matrix>& field) {
  auto off = block_offsets(bundle);
  const auto total = static_cast<Eigen::Index>(off.back());
  Matrix m = Matrix::Zero(total, total);
  for (std::size_t x = 0; x < field.size(); ++x)
    m.block(static_cast<Eigen::Index>(off[x]), static_cast<Eigen::Index>(off[x]), field[x].rows(),
            field[x].cols()) = field[x];
  return m;
}

std::vector<Matrix> metric_unitaries(const HilbertBundle& bundle, const std::vector<Matrix>& standard) {
  std::vector<Matrix> out;
  for (std::size_t x = 0; x < standard.size(); ++x) {
    Eigen::VectorXd s = bundle.metric.at(x).cwiseSqrt();
    out.push_back(s.cwiseInverse().cast<Complex>().asDiagonal() * standard[x] * s.cast<Complex>().asDiagonal());
  }
  return out;
}

} // namespace groupalg
