#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "groupalg/groupoid.hpp"
#include "groupalg/haar.hpp"
#include "groupalg/inductive.hpp"
#include "groupalg/partial_algebra.hpp"
#include "groupalg/representation.hpp"

namespace groupalg {

// Malformed text or a document that does not fit the schema. Line and column
// are 1-based and 0 when the position is unknown (schema errors).
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

struct GroupoidDocument {
  FiniteGroupoid groupoid;
  std::optional<HaarSystem> haar;  // nullopt: counting
  std::optional<ObjectMeasure> nu; // nullopt: uniform

  HaarSystem effective_haar() const { return haar ? *haar : counting_haar(groupoid); }
  ObjectMeasure effective_nu() const { return nu ? *nu : uniform_measure(groupoid); }
};

// Groupoid file: "objects", then either "relation" (with optional "closure":
// "strict" | "complete") or "arrows" + "compose" + "inverse" (optional
// "units"), optional "haar" and "nu". Throws ParseError, UnknownLabel,
// StructureError and NotClosed.
GroupoidDocument parse_groupoid(std::string_view text);
GroupoidDocument load_groupoid(const std::filesystem::path& path);
// Explicit-table form; parse_groupoid(write_groupoid(d)) reproduces d.
std::string write_groupoid(const GroupoidDocument& doc);

// {"arrow-id": [re, im], ...}. With `sparse`, absent arrows are 0.
GroupoidFunction parse_function(std::string_view text, const FiniteGroupoid& g, bool sparse = false);
GroupoidFunction load_function(const std::filesystem::path& path, const FiniteGroupoid& g, bool sparse = false);
std::string write_function(const FiniteGroupoid& g, const GroupoidFunction& f);

// {"basis": [...], "products": [[i, j, {k: [re, im]}], ...],
//  "star": {i: [j, [re, im]]}}; star defaults to the identity.
StructureTable parse_structure_table(std::string_view text);
StructureTable load_structure_table(const std::filesystem::path& path);
std::string write_structure_table(const StructureTable& t);

// Manifest with "pieces" [{name, file}], "embeddings" [{from, to, objects,
// arrows}] and optional "ambient" {file, maps: [{piece, objects, arrows}]}.
// Map entries are [from, to] pairs of labels or indices. Piece files are
// resolved relative to the manifest.
InductiveSystem load_manifest(const std::filesystem::path& path);

// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
std::string write_matrix(const Matrix& m);

std::string read_text(const std::filesystem::path& path);

} // namespace groupalg
