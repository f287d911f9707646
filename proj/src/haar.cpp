#include "groupalg/haar.hpp"

#include <algorithm>
#include <cmath>

namespace groupalg {

namespace {

void require_function(const FiniteGroupoid& g, const GroupoidFunction& f) {
  if (f.size() != g.arrow_count())
    throw ShapeMismatch("function has " + std::to_string(f.size()) + " values for " +
                        std::to_string(g.arrow_count()) + " arrows");
}

void require_haar(const FiniteGroupoid& g, const HaarSystem& mu) {
  if (mu.weight.size() != g.arrow_count()) throw ShapeMismatch("Haar system has the wrong number of weights");
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

HaarSystem counting_haar(const FiniteGroupoid& g) { return {std::vector<double>(g.arrow_count(), 1.0)}; }

HaarSystem source_weighted_haar(const FiniteGroupoid& g, const std::vector<double>& object_weight) {
  if (object_weight.size() != g.object_count()) throw ShapeMismatch("one weight per object expected");
  HaarSystem mu;
  for (const auto& a : g.arrows()) mu.weight.push_back(object_weight[idx(a.src)]);
  return mu;
}

Report check_haar_positive(const FiniteGroupoid& g, const HaarSystem& mu) {
  Report r;
  if (mu.weight.size() != g.arrow_count()) {
    r.fail("haar-shape", std::to_string(mu.weight.size()) + " weights for " +
                             std::to_string(g.arrow_count()) + " arrows");
    return r;
  }
  for (const auto& a : g.arrows()) {
    double w = mu.weight[idx(a.id)];
    if (!(w > 0.0) || !std::isfinite(w))
      r.fail("haar-positive", "arrow '" + g.arrow_label(a.id) + "' has weight " + format_number(w));
  }
  return r;
}

Report check_left_invariance(const FiniteGroupoid& g, const HaarSystem& mu, double tol) {
  require_haar(g, mu);
  Report r;
  // Pointwise residual max |w(γη) − w(η)| / w(η).
  for (const auto& a : g.arrows())
    for (ArrowId eta : g.target_fiber(a.src)) {
      auto ge = g.try_compose(a.id, eta);
      if (!ge) continue;
      double w = mu.weight[idx(eta)];
      r.observe(std::abs(mu.weight[idx(*ge)] - w) / w);
    }
  for (std::size_t y = 0; y < g.object_count(); ++y) {
    auto fibre = g.source_fiber(object_id(y));
    // Classes of equal weight along the fibre; keep the largest.
    std::vector<std::size_t> cls(fibre.size());
    std::vector<std::size_t> size;
    std::vector<double> value;
    for (std::size_t k = 0; k < fibre.size(); ++k) {
      double w = mu.weight[idx(fibre[k])];
      std::size_t c = 0;
      while (c < value.size() && !close(value[c], w, tol)) ++c;
      if (c == value.size()) {
        value.push_back(w);
        size.push_back(0);
      }
      ++size[c];
      cls[k] = c;
    }
    if (value.size() <= 1) continue;
    std::size_t best = std::max_element(size.begin(), size.end()) - size.begin();
    bool tie = std::count(size.begin(), size.end(), size[best]) > 1;
    for (std::size_t k = 0; k < fibre.size(); ++k) {
      if (!tie && cls[k] == best) continue;
      double w = mu.weight[idx(fibre[k])];
      r.fail("left-invariance",
             "arrow '" + g.arrow_label(fibre[k]) + "' (source '" + g.object_label(object_id(y)) +
                 "', weight " + format_number(w) + ")",
             std::abs(w - value[best]) / value[best]);
    }
  }
  return r;
}

GroupoidFunction zero_function(const FiniteGroupoid& g) { return GroupoidFunction(g.arrow_count()); }

GroupoidFunction constant_function(const FiniteGroupoid& g, Complex value) {
  return GroupoidFunction(g.arrow_count(), value);
}

GroupoidFunction delta(const FiniteGroupoid& g, ArrowId a, Complex value) {
  GroupoidFunction f(g.arrow_count());
  f.at(idx(a)) = value;
  return f;
}

std::vector<Complex> fiber_integrate(const FiniteGroupoid& g, const HaarSystem& mu,
                                     const GroupoidFunction& f) {
  require_function(g, f);
  require_haar(g, mu);
  std::vector<Complex> out(g.object_count());
  for (std::size_t x = 0; x < g.object_count(); ++x)
    for (ArrowId a : g.target_fiber(object_id(x))) out[x] += f[idx(a)] * mu.weight[idx(a)];
  return out;
}

GroupoidFunction convolve(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f,
                          const GroupoidFunction& h) {
  require_function(g, f);
  require_function(g, h);
  require_haar(g, mu);
  GroupoidFunction out(g.arrow_count());
  for (const auto& gamma : g.arrows()) {
    Complex sum{};
    for (ArrowId eta : g.target_fiber(gamma.tgt)) {
      if (f[idx(eta)] == Complex{}) continue;
      sum += f[idx(eta)] * h[idx(g.compose(g.inverse(eta), gamma.id))] * mu.weight[idx(eta)];
    }
    out[idx(gamma.id)] = sum;
  }
  return out;
}

GroupoidFunction involute(const FiniteGroupoid& g, const GroupoidFunction& f) {
  require_function(g, f);
  GroupoidFunction out(g.arrow_count());
  for (const auto& a : g.arrows()) out[idx(a.id)] = std::conj(f[idx(g.inverse(a.id))]);
  return out;
}

GroupoidFunction unit_element(const FiniteGroupoid& g, const HaarSystem& mu) {
  require_haar(g, mu);
  GroupoidFunction u(g.arrow_count());
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    ArrowId e = g.unit(object_id(x));
    u[idx(e)] = 1.0 / mu.weight[idx(e)];
  }
  return u;
}

double i_norm_t(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f) {
  require_function(g, f);
  require_haar(g, mu);
  double best = 0.0;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    double s = 0.0;
    for (ArrowId a : g.target_fiber(object_id(x))) s += std::abs(f[idx(a)]) * mu.weight[idx(a)];
    best = std::max(best, s);
  }
  return best;
}

double i_norm_s(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f) {
  require_function(g, f);
  require_haar(g, mu);
  double best = 0.0;
  for (std::size_t y = 0; y < g.object_count(); ++y) {
    double s = 0.0;
    for (ArrowId a : g.source_fiber(object_id(y)))
      s += std::abs(f[idx(a)]) * mu.weight[idx(g.inverse(a))];
    best = std::max(best, s);
  }
  return best;
}

double i_norm(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f) {
  return std::max(i_norm_t(g, mu, f), i_norm_s(g, mu, f));
}

Complex half_density_inner(const FiniteGroupoid& g, const HaarSystem& mu, const GroupoidFunction& f,
                           const GroupoidFunction& h) {
  require_function(g, f);
  require_function(g, h);
  require_haar(g, mu);
  Complex s{};
  for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * std::conj(h[k]) * mu.weight[k];
  return s;
}

double sup_norm(const GroupoidFunction& f) {
  double best = 0.0;
  for (const auto& v : f) best = std::max(best, std::abs(v));
  return best;
}

double sup_distance(const GroupoidFunction& f, const GroupoidFunction& h) {
  if (f.size() != h.size()) throw ShapeMismatch("functions have different lengths");
  double best = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) best = std::max(best, std::abs(f[k] - h[k]));
  return best;
}

double support_fibre_mass(const FiniteGroupoid& g, const HaarSystem& mu, const std::vector<bool>& support) {
  require_haar(g, mu);
  if (support.size() != g.arrow_count()) throw ShapeMismatch("support mask has the wrong length");
  double best = 0.0;
  for (std::size_t x = 0; x < g.object_count(); ++x) {
    double t = 0.0, s = 0.0;
    for (ArrowId a : g.target_fiber(object_id(x)))
      if (support[idx(a)]) t += mu.weight[idx(a)];
    for (ArrowId a : g.source_fiber(object_id(x)))
      if (support[idx(a)]) s += mu.weight[idx(g.inverse(a))];
    best = std::max({best, t, s});
  }
  return best;
}

Report i_norm_convergence_check(const FiniteGroupoid& g, const HaarSystem& mu,
                                const std::vector<GroupoidFunction>& net, const GroupoidFunction& limit,
                                const std::vector<bool>& support, double tol) {
  Report r;
  const double c = support_fibre_mass(g, mu, support);
  auto outside = [&](const GroupoidFunction& f) {
    for (std::size_t k = 0; k < f.size(); ++k)
      if (!support[k] && f[k] != Complex{}) return true;
    return false;
  };
  if (outside(limit)) r.fail("support", "limit leaves the common support");
  for (std::size_t k = 0; k < net.size(); ++k) {
    if (outside(net[k])) {
      r.fail("support", "member " + std::to_string(k) + " leaves the common support");
      continue;
    }
    GroupoidFunction d(net[k].size());
    for (std::size_t a = 0; a < d.size(); ++a) d[a] = net[k][a] - limit[a];
    double lhs = i_norm(g, mu, d), rhs = c * sup_norm(d);
    double excess = lhs - rhs;
    r.observe(std::max(0.0, excess));
    if (excess > tol * std::max(1.0, rhs))
      r.fail("i-norm-bound", "member " + std::to_string(k) + ": " + format_number(lhs) + " > " +
                                 format_number(rhs),
             excess);
  }
  return r;
}

} // namespace groupalg
