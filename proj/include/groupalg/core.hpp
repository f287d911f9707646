#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace groupalg {

using Complex = std::complex<double>;

// Strong integer handles. The numeric value is the position in the owning
// groupoid's object or arrow list (file order).
enum class ObjectId : std::uint32_t {};
enum class ArrowId : std::uint32_t {};

constexpr std::size_t idx(ObjectId x) { return static_cast<std::size_t>(x); }
constexpr std::size_t idx(ArrowId a) { return static_cast<std::size_t>(a); }
constexpr ObjectId object_id(std::size_t i) { return static_cast<ObjectId>(i); }
constexpr ArrowId arrow_id(std::size_t i) { return static_cast<ArrowId>(i); }

inline constexpr ArrowId kNoArrow{std::numeric_limits<std::uint32_t>::max()};

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raw groupoid tables that are not even shape-consistent (index out of range,
// duplicate labels). Axiom violations are reported by validate(), not thrown.
class StructureError : public Error {
public:
  using Error::Error;
};

class UnknownLabel : public Error {
public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown label '" + label + "'"), label_(label) {}
  const std::string& label() const noexcept { return label_; }

private:
  std::string label_;
};

class UnknownObject : public Error {
public:
  using Error::Error;
};

// Strict relation ingestion found a pair whose composite, inverse or unit is
// missing. The witness is the missing pair (target label, source label).
class NotClosed : public Error {
public:
  NotClosed(std::string reason, std::string tgt, std::string src)
      : Error("relation is not closed: missing (" + tgt + "," + src + ") required as " +
              reason),
        reason_(std::move(reason)), tgt_(std::move(tgt)), src_(std::move(src)) {}

  const std::string& reason() const noexcept { return reason_; }
  const std::string& witness_target() const noexcept { return tgt_; }
  const std::string& witness_source() const noexcept { return src_; }

private:
  std::string reason_;
  std::string tgt_;
  std::string src_;
};

class NotRelationGroupoid : public Error {
public:
  using Error::Error;
};

class DomainMismatch : public Error {
public:
  using Error::Error;
};

class NotTransitive : public Error {
public:
  using Error::Error;
};

class ShapeMismatch : public Error {
public:
  using Error::Error;
};

class SystemInvalid : public Error {
public:
  using Error::Error;
};

class InvalidGroupoid : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Reports

struct Finding {
  std::string check;
  std::string witness;
  double residual = 0.0;
};

// Outcome of a verification routine. Violations make the report fail; notes
// are informational (vacuous axioms, warnings).
class Report {
public:
  void fail(std::string check, std::string witness, double residual = 0.0) {
    violations_.push_back({std::move(check), std::move(witness), residual});
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  void merge(const Report& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
    notes_.insert(notes_.end(), other.notes_.begin(), other.notes_.end());
    observe(other.max_residual_);
  }

  bool ok() const noexcept { return violations_.empty(); }
  bool empty() const noexcept { return violations_.empty(); }
  const std::vector<Finding>& violations() const noexcept { return violations_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }

  bool mentions(const std::string& check) const {
    for (const auto& v : violations_)
      if (v.check == check) return true;
    return false;
  }

  // Largest residual over all recorded quantities, violating or not.
  double max_residual() const noexcept { return max_residual_; }
  void observe(double residual) noexcept {
    if (residual > max_residual_) max_residual_ = residual;
  }

private:
  std::vector<Finding> violations_;
  std::vector<std::string> notes_;
  double max_residual_ = 0.0;
};

// ---------------------------------------------------------------------------
// Tolerances

struct Tolerances {
  // Identities that hold up to permutation and conjugation.
  double exact = 1e-12;
  // Identities involving accumulated sums of products.
  double accumulated = 1e-9;

  // Reads GROUPALG_TOL as "exact" or "exact,accumulated". Throws Error on a
  // malformed value.
  static Tolerances from_env();
  static Tolerances parse(const std::string& text);
};

// Decimal text that parses back to the identical double.
std::string format_number(double value);

} // namespace groupalg
