#pragma once

#include <string>
#include <vector>

#include "groupalg/groupoid.hpp"

namespace groupalg {

// Pair groupoid A × A with arrows in lexicographic (target, source) order.
// Arrow labels are "(x,y)" as for relation groupoids.
FiniteGroupoid pair_groupoid(const std::vector<std::string>& objects);
// Objects "0", "1", ..., "n-1".
FiniteGroupoid pair_groupoid(std::size_t n);

// One-object groupoid from a group multiplication table. Element 0 must be
// the identity; table[i][j] is the index of element i·j.
FiniteGroupoid group_groupoid(const std::string& object,
                              const std::vector<std::string>& elements,
                              const std::vector<std::vector<std::size_t>>& table);

// ℤ/n with elements "e", "g", "g2", ...
FiniteGroupoid cyclic_group(std::size_t n, const std::string& object = "*");
// Symmetric group on k letters, elements listed in lexicographic order of
// their one-line notation (identity first).
FiniteGroupoid symmetric_group(std::size_t k, const std::string& object = "*");

// Direct product: objects (x,u), arrows (γ,η). Labels are "x*u" and "γ*η".
FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h);

// Disjoint union; labels of `h` that clash with `g` get a "#2" suffix.
FiniteGroupoid disjoint_union(const FiniteGroupoid& g, const FiniteGroupoid& h);

// Same groupoid with arrows renumbered: new position k holds old arrow
// order[k]. `order` must be a permutation of the arrow indices.
FiniteGroupoid reorder_arrows(const FiniteGroupoid& g, const std::vector<ArrowId>& order);
// Same groupoid with objects renumbered: new position k holds old object
// order[k].
FiniteGroupoid reorder_objects(const FiniteGroupoid& g, const std::vector<ObjectId>& order);

} // namespace groupalg
