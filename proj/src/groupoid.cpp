#include "groupalg/groupoid.hpp"

#include <map>

namespace groupalg {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw StructureError(message);
}

} // namespace

FiniteGroupoid FiniteGroupoid::from_tables(GroupoidTables t) {
  const std::size_t n_obj = t.objects.size();
  const std::size_t n_arr = t.arrow_labels.size();
  require(t.tgt.size() == n_arr && t.src.size() == n_arr,
          "arrow label, target and source lists differ in length");
  require(t.inverse.empty() || t.inverse.size() == n_arr, "inverse table has wrong length");
  require(t.units.empty() || t.units.size() == n_obj, "unit table has wrong length");

  FiniteGroupoid g;
  g.objects_ = std::move(t.objects);
  g.arrow_labels_ = std::move(t.arrow_labels);

  for (std::size_t i = 0; i < n_obj; ++i) {
    bool fresh = g.object_index_.emplace(g.objects_[i], object_id(i)).second;
    require(fresh, "duplicate object label '" + g.objects_[i] + "'");
  }
  for (std::size_t i = 0; i < n_arr; ++i) {
    bool fresh = g.arrow_index_.emplace(g.arrow_labels_[i], arrow_id(i)).second;
    require(fresh, "duplicate arrow id '" + g.arrow_labels_[i] + "'");
  }

  g.arrows_.reserve(n_arr);
  g.target_fibers_.resize(n_obj);
  g.source_fibers_.resize(n_obj);
  g.fiber_pos_.resize(n_arr);
  for (std::size_t i = 0; i < n_arr; ++i) {
    require(idx(t.tgt[i]) < n_obj && idx(t.src[i]) < n_obj,
            "arrow '" + g.arrow_labels_[i] + "' has an endpoint out of range");
    g.arrows_.push_back({arrow_id(i), t.tgt[i], t.src[i]});
    auto& tf = g.target_fibers_[idx(t.tgt[i])];
    g.fiber_pos_[i] = tf.size();
    tf.push_back(arrow_id(i));
    g.source_fibers_[idx(t.src[i])].push_back(arrow_id(i));
  }

  g.inverse_.assign(n_arr, kNoArrow);
  for (std::size_t i = 0; i < t.inverse.size(); ++i) {
    if (!t.inverse[i]) continue;
    require(idx(*t.inverse[i]) < n_arr, "inverse entry out of range");
    g.inverse_[i] = *t.inverse[i];
  }

  g.compose_.resize(n_arr);
  for (std::size_t i = 0; i < n_arr; ++i)
    g.compose_[i].assign(g.target_fibers_[idx(t.src[i])].size(), kNoArrow);
  for (const auto& e : t.compose) {
    require(idx(e.first) < n_arr && idx(e.second) < n_arr && idx(e.result) < n_arr,
            "composition entry out of range");
    if (g.source(e.first) != g.target(e.second)) {
      g.stray_.push_back(e);
      continue;
    }
    ArrowId& slot = g.compose_[idx(e.first)][g.fiber_pos_[idx(e.second)]];
    if (slot == kNoArrow)
      slot = e.result;
    else if (slot != e.result)
      g.stray_.push_back(e);
  }

  g.units_.assign(n_obj, kNoArrow);
  if (!t.units.empty()) {
    for (std::size_t x = 0; x < n_obj; ++x) {
      if (!t.units[x]) continue;
      require(idx(*t.units[x]) < n_arr, "unit entry out of range");
      g.units_[x] = *t.units[x];
    }
  } else {
    for (std::size_t x = 0; x < n_obj; ++x) {
      for (ArrowId a : g.target_fibers_[x]) {
        if (idx(g.source(a)) != x) continue;
        if (g.compose_[idx(a)][g.fiber_pos_[idx(a)]] == a) {
          g.units_[x] = a;
          break;
        }
      }
    }
  }
  return g;
}

std::optional<ObjectId> FiniteGroupoid::find_object(std::string_view label) const {
  auto it = object_index_.find(std::string(label));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> FiniteGroupoid::find_arrow(std::string_view label) const {
  auto it = arrow_index_.find(std::string(label));
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

ObjectId FiniteGroupoid::object(std::string_view label) const {
  if (auto x = find_object(label)) return *x;
  throw UnknownLabel(std::string(label));
}

ArrowId FiniteGroupoid::arrow(std::string_view label) const {
  if (auto a = find_arrow(label)) return *a;
  throw UnknownLabel(std::string(label));
}

std::optional<ArrowId> FiniteGroupoid::try_unit(ObjectId x) const {
  ArrowId u = units_.at(idx(x));
  if (u == kNoArrow) return std::nullopt;
  return u;
}

std::optional<ArrowId> FiniteGroupoid::try_inverse(ArrowId a) const {
  ArrowId inv = inverse_.at(idx(a));
  if (inv == kNoArrow) return std::nullopt;
  return inv;
}

std::optional<ArrowId> FiniteGroupoid::try_compose(ArrowId first, ArrowId second) const {
  if (!composable(first, second)) return std::nullopt;
  ArrowId r = compose_[idx(first)][fiber_pos_[idx(second)]];
  if (r == kNoArrow) return std::nullopt;
  return r;
}

ArrowId FiniteGroupoid::unit(ObjectId x) const {
  if (auto u = try_unit(x)) return *u;
  throw InvalidGroupoid("object '" + object_label(x) + "' has no unit arrow");
}

ArrowId FiniteGroupoid::inverse(ArrowId a) const {
  if (auto inv = try_inverse(a)) return *inv;
  throw InvalidGroupoid("arrow '" + arrow_label(a) + "' has no inverse");
}

ArrowId FiniteGroupoid::compose(ArrowId first, ArrowId second) const {
  if (auto r = try_compose(first, second)) return *r;
  throw InvalidGroupoid("composition " + arrow_label(first) + " o " + arrow_label(second) +
                        " is undefined");
}

std::span<const ArrowId> FiniteGroupoid::target_fiber(ObjectId x) const {
  if (idx(x) >= objects_.size()) throw UnknownObject("object index out of range");
  return target_fibers_[idx(x)];
}

std::span<const ArrowId> FiniteGroupoid::source_fiber(ObjectId y) const {
  if (idx(y) >= objects_.size()) throw UnknownObject("object index out of range");
  return source_fibers_[idx(y)];
}

std::vector<ArrowId> FiniteGroupoid::arrows_between(ObjectId tgt, ObjectId src) const {
  std::vector<ArrowId> out;
  for (ArrowId a : target_fiber(tgt))
    if (source(a) == src) out.push_back(a);
  return out;
}

GroupoidTables FiniteGroupoid::tables() const {
  GroupoidTables t;
  t.objects = objects_;
  t.arrow_labels = arrow_labels_;
  for (const auto& a : arrows_) {
    t.tgt.push_back(a.tgt);
    t.src.push_back(a.src);
  }
  for (ArrowId u : units_)
    t.units.push_back(u == kNoArrow ? std::nullopt : std::optional<ArrowId>(u));
  for (ArrowId inv : inverse_)
    t.inverse.push_back(inv == kNoArrow ? std::nullopt : std::optional<ArrowId>(inv));
  for (const auto& a : arrows_) {
    const auto& fiber = target_fibers_[idx(a.src)];
    for (std::size_t k = 0; k < fiber.size(); ++k)
      if (compose_[idx(a.id)][k] != kNoArrow)
        t.compose.push_back({a.id, fiber[k], compose_[idx(a.id)][k]});
  }
  t.compose.insert(t.compose.end(), stray_.begin(), stray_.end());
  return t;
}

// ---------------------------------------------------------------------------

namespace {

// Collects the first witness and a count for each axiom.
class AxiomLedger {
public:
  void violate(const std::string& check, const std::string& witness) {
    auto [it, fresh] = entries_.try_emplace(check, Entry{witness, 0});
    ++it->second.count;
    if (fresh) order_.push_back(check);
  }

  Report report() const {
    Report r;
    for (const auto& check : order_) {
      const auto& e = entries_.at(check);
      std::string witness = e.witness;
      if (e.count > 1) witness += " (+" + std::to_string(e.count - 1) + " more)";
      r.fail(check, witness);
    }
    return r;
  }

private:
  struct Entry {
    std::string witness;
    std::size_t count;
  };
  std::map<std::string, Entry> entries_;
  std::vector<std::string> order_;
};

} // namespace

Report validate(const FiniteGroupoid& g) {
  AxiomLedger ledger;
  auto al = [&](ArrowId a) { return "'" + g.arrow_label(a) + "'"; };
  auto ol = [&](ObjectId x) { return "'" + g.object_label(x) + "'"; };

  for (std::size_t i = 0; i < g.object_count(); ++i) {
    ObjectId x = object_id(i);
    auto u = g.try_unit(x);
    if (!u)
      ledger.violate("unit", "object " + ol(x) + " has no unit arrow");
    else if (g.target(*u) != x || g.source(*u) != x)
      ledger.violate("unit", "unit " + al(*u) + " of object " + ol(x) + " is not a loop at it");
  }

  for (const auto& a : g.arrows()) {
    auto inv = g.try_inverse(a.id);
    if (!inv)
      ledger.violate("inverse", "arrow " + al(a.id) + " has no inverse");
    else if (g.target(*inv) != a.src || g.source(*inv) != a.tgt)
      ledger.violate("inverse", "inverse of " + al(a.id) + " does not swap endpoints");
  }

  for (const auto& e : g.stray_compositions())
    ledger.violate("composition-domain", al(e.first) + " o " + al(e.second) +
                                             " is listed but not composable or conflicting");

  for (const auto& a : g.arrows()) {
    for (ArrowId b : g.target_fiber(a.src)) {
      auto r = g.try_compose(a.id, b);
      if (!r) {
        ledger.violate("composition-defined", al(a.id) + " o " + al(b) + " is missing");
        continue;
      }
      if (g.target(*r) != a.tgt || g.source(*r) != g.source(b))
        ledger.violate("composition-endpoints",
                       al(a.id) + " o " + al(b) + " = " + al(*r) + " has wrong endpoints");
    }
  }

  for (const auto& a : g.arrows()) {
    if (auto us = g.try_unit(a.src)) {
      auto r = g.try_compose(a.id, *us);
      if (r && *r != a.id) ledger.violate("unit-law", al(a.id) + " o unit(src) != " + al(a.id));
    }
    if (auto ut = g.try_unit(a.tgt)) {
      auto r = g.try_compose(*ut, a.id);
      if (r && *r != a.id) ledger.violate("unit-law", "unit(tgt) o " + al(a.id) + " != " + al(a.id));
    }
  }

  for (const auto& a : g.arrows()) {
    auto inv = g.try_inverse(a.id);
    if (!inv || g.source(*inv) != a.tgt || g.target(*inv) != a.src) continue;
    auto ut = g.try_unit(a.tgt);
    auto us = g.try_unit(a.src);
    auto r1 = g.try_compose(a.id, *inv);
    auto r2 = g.try_compose(*inv, a.id);
    if (r1 && ut && *r1 != *ut)
      ledger.violate("inverse-law", al(a.id) + " o inverse != unit(tgt)");
    if (r2 && us && *r2 != *us)
      ledger.violate("inverse-law", "inverse o " + al(a.id) + " != unit(src)");
  }

  // Exhaustive over composable triples (a, b, c) with src a = tgt b and
  // src b = tgt c.
  for (const auto& a : g.arrows()) {
    for (ArrowId b : g.target_fiber(a.src)) {
      auto ab = g.try_compose(a.id, b);
      if (!ab || g.source(*ab) != g.source(b)) continue;
      for (ArrowId c : g.target_fiber(g.source(b))) {
        auto bc = g.try_compose(b, c);
        if (!bc || g.target(*bc) != a.src) continue;
        auto left = g.try_compose(*ab, c);
        auto right = g.try_compose(a.id, *bc);
        if (left && right && *left != *right)
          ledger.violate("associativity", "(" + al(a.id) + " o " + al(b) + ") o " + al(c) +
                                              " != " + al(a.id) + " o (" + al(b) + " o " +
                                              al(c) + ")");
      }
    }
  }

  return ledger.report();
}

} // namespace groupalg
