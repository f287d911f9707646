#pragma once

#include <optional>
#include <vector>

#include "groupalg/groupoid.hpp"

namespace groupalg {

// A functor between finite groupoids given by its object and arrow tables.
struct GroupoidMap {
  std::vector<ObjectId> objects;
  std::vector<ArrowId> arrows;

  ObjectId operator()(ObjectId x) const { return objects.at(idx(x)); }
  ArrowId operator()(ArrowId a) const { return arrows.at(idx(a)); }
};

GroupoidMap identity_map(const FiniteGroupoid& g);

// outer ∘ inner
GroupoidMap compose_maps(const GroupoidMap& outer, const GroupoidMap& inner);

bool same_map(const GroupoidMap& a, const GroupoidMap& b);

// Checks that `map` is a well-formed functor from -> to preserving source,
// target, units, inverses and composition; with `injective`, also that it is
// injective on objects and arrows.
Report check_morphism(const FiniteGroupoid& from, const FiniteGroupoid& to, const GroupoidMap& map,
                      bool injective = true);

// Bijective functor g -> h, or nullopt. Backtracking search over object
// bijections that respect fibre-size signatures, then over arrows within each
// hom-set, checked against composition.
std::optional<GroupoidMap> find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h);

} // namespace groupalg
