#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupalg/groupoid.hpp"
#include "groupalg/morphism.hpp"

namespace groupalg {

// σ_βα : piece(from) -> piece(to).
struct Embedding {
  std::size_t from = 0;
  std::size_t to = 0;
  GroupoidMap map;
};

// Pieces indexed 0..n-1. The order α ≤ β is the reflexive-transitive closure
// of the listed embeddings; maps for pairs without a listed embedding are
// composites along a path. An optional ambient groupoid with one map per
// piece plays the role of the top-level embeddings σ_α.
struct InductiveSystem {
  std::vector<std::string> names;
  std::vector<FiniteGroupoid> pieces;
  std::vector<Embedding> embeddings;
  std::optional<FiniteGroupoid> ambient;
  std::vector<GroupoidMap> to_ambient;
};

// Pieces valid, embeddings injective functors, identity on self-loops, the
// order antisymmetric and directed, the cocycle σ_γα = σ_γβ ∘ σ_βα on every
// chain α < β < γ (witness "(α,β,γ)"), and ambient maps compatible and
// jointly covering. Equal object sets along α < β are reported as notes.
Report check_system(const InductiveSystem& sys);

struct LimitResult {
  FiniteGroupoid groupoid;
  std::vector<GroupoidMap> injections;  // piece -> limit
};

// Quotient of the disjoint union by the identifications σ_βα. Classes are
// ordered by their smallest global id (pieces in order, then file order) and
// take that member's label; clashing labels get an "@piece" suffix.
// Throws SystemInvalid when check_system fails.
LimitResult limit(const InductiveSystem& sys);

} // namespace groupalg
