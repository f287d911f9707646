#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "groupalg/core.hpp"

namespace groupalg {

struct Arrow {
  ArrowId id;
  ObjectId tgt;
  ObjectId src;
};

// One entry of a composition table: first ∘ second = result, where `first`
// is applied after `second` (so src(first) must equal tgt(second)).
struct CompositionEntry {
  ArrowId first;
  ArrowId second;
  ArrowId result;
};

// Unchecked description of a finite groupoid. Everything here may violate
// the groupoid axioms; FiniteGroupoid::from_tables only rejects entries that
// cannot be stored (out-of-range indices, duplicate labels).
struct GroupoidTables {
  std::vector<std::string> objects;
  std::vector<std::string> arrow_labels;
  std::vector<ObjectId> tgt;
  std::vector<ObjectId> src;
  // Empty means "derive from the composition table": the unit of x is the
  // first arrow x -> x that is idempotent.
  std::vector<std::optional<ArrowId>> units;
  std::vector<std::optional<ArrowId>> inverse;
  std::vector<CompositionEntry> compose;
};

// A finite groupoid Γ ⇉ A with precomputed fibres and composition table.
// Immutable after construction.
class FiniteGroupoid {
public:
  FiniteGroupoid() = default;

  static FiniteGroupoid from_tables(GroupoidTables tables);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  const std::string& object_label(ObjectId x) const { return objects_.at(idx(x)); }
  const std::string& arrow_label(ArrowId a) const { return arrow_labels_.at(idx(a)); }
  const std::vector<std::string>& object_labels() const noexcept { return objects_; }
  const std::vector<std::string>& arrow_labels() const noexcept { return arrow_labels_; }

  std::optional<ObjectId> find_object(std::string_view label) const;
  std::optional<ArrowId> find_arrow(std::string_view label) const;
  ObjectId object(std::string_view label) const;  // throws UnknownLabel
  ArrowId arrow(std::string_view label) const;    // throws UnknownLabel

  std::span<const Arrow> arrows() const noexcept { return arrows_; }
  ObjectId target(ArrowId a) const { return arrows_[idx(a)].tgt; }
  ObjectId source(ArrowId a) const { return arrows_[idx(a)].src; }

  std::optional<ArrowId> try_unit(ObjectId x) const;
  std::optional<ArrowId> try_inverse(ArrowId a) const;
  // Table lookup; nullopt when the pair is not composable or the entry is
  // missing.
  std::optional<ArrowId> try_compose(ArrowId first, ArrowId second) const;

  // Checked accessors for groupoids that pass validate(). Throw
  // InvalidGroupoid when the entry is absent.
  ArrowId unit(ObjectId x) const;
  ArrowId inverse(ArrowId a) const;
  ArrowId compose(ArrowId first, ArrowId second) const;
  bool composable(ArrowId first, ArrowId second) const {
    return source(first) == target(second);
  }

  // Γ(x,−) = t⁻¹(x) and Γ(−,y) = s⁻¹(y), in arrow order.
  std::span<const ArrowId> target_fiber(ObjectId x) const;
  std::span<const ArrowId> source_fiber(ObjectId y) const;
  // Position of `a` inside target_fiber(target(a)).
  std::size_t target_fiber_position(ArrowId a) const { return fiber_pos_[idx(a)]; }

  // Arrows x <- y, in arrow order.
  std::vector<ArrowId> arrows_between(ObjectId tgt, ObjectId src) const;

  // Entries of the raw table that name a non-composable pair, or that repeat
  // a pair with a different result. Kept for validate().
  const std::vector<CompositionEntry>& stray_compositions() const noexcept { return stray_; }

  GroupoidTables tables() const;

private:
  std::vector<std::string> objects_;
  std::vector<std::string> arrow_labels_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> units_;
  std::vector<ArrowId> inverse_;
  std::vector<std::vector<ArrowId>> target_fibers_;
  std::vector<std::vector<ArrowId>> source_fibers_;
  std::vector<std::size_t> fiber_pos_;
  // compose_[a][k] = a ∘ target_fiber(source(a))[k]
  std::vector<std::vector<ArrowId>> compose_;
  std::vector<CompositionEntry> stray_;
  std::unordered_map<std::string, ObjectId> object_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
};

// Every violated axiom with its first witness, in a fixed order: units,
// inverses, table endpoints, unit laws, inverse laws, associativity.
Report validate(const FiniteGroupoid& g);

// ---------------------------------------------------------------------------
// Relation ingestion

enum class ClosurePolicy { strict, complete };

using LabelPair = std::pair<std::string, std::string>;

// Arrow (x,y) has target x and source y; (x,y)∘(y,z) = (x,z). The object set
// of the result is the set of labels touched by `pairs`, in `objects` order.
FiniteGroupoid build_from_relation(const std::vector<std::string>& objects,
                                   const std::vector<LabelPair>& pairs,
                                   ClosurePolicy policy = ClosurePolicy::strict);

// Label given to the relation arrow with target x and source y.
std::string relation_arrow_label(std::string_view tgt, std::string_view src);

// (target label, source label) of every arrow, in arrow order.
std::vector<LabelPair> relation_pairs(const FiniteGroupoid& g);

// True when every isotropy group is trivial, i.e. arrows are determined by
// their endpoints.
bool is_relation_groupoid(const FiniteGroupoid& g);

// ---------------------------------------------------------------------------
// Fibres, orbits, isotropy, multipliers

std::vector<ArrowId> target_fiber(const FiniteGroupoid& g, ObjectId x);
std::vector<ArrowId> source_fiber(const FiniteGroupoid& g, ObjectId y);

// Reachability partition; blocks ordered by their first object.
std::vector<std::vector<ObjectId>> orbits(const FiniteGroupoid& g);
bool is_transitive(const FiniteGroupoid& g);

// Arrows x -> x, unit first, then arrow order.
std::vector<ArrowId> isotropy(const FiniteGroupoid& g, ObjectId x);
// Ξ = ⨆ₓ Γ(x,x) on the same object set.
FiniteGroupoid isotropy_bundle(const FiniteGroupoid& g);

struct MultiplierSets {
  std::vector<ObjectId> left;   // Γ(·,A): related to every object on the right
  std::vector<ObjectId> right;  // Γ(A,·)
  std::vector<ObjectId> ideal;  // left ∩ right
  Report closure;               // ideal/module closure certificate
};

// Throws NotRelationGroupoid when some isotropy group is nontrivial.
MultiplierSets multipliers(const FiniteGroupoid& g);

// The subgroupoid carried by `arrows` (which must contain units and be closed
// under composition and inverse), with the objects they touch.
FiniteGroupoid subgroupoid(const FiniteGroupoid& g, const std::vector<ArrowId>& arrows);

} // namespace groupalg
