#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupalg/io.hpp"

namespace groupalg {

struct BatteryOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  Tolerances tol;
};

struct BatteryLine {
  std::string name;
  enum class Status { pass, fail, skip } status = Status::pass;
  double residual = 0.0;
  std::string detail;
};

// Every invariant suite on one groupoid document: groupoid axioms, Haar and ν,
// relation involution, multipliers, fibres and orbits, isotropy bundle,
// bisection group, convolution *-algebra laws, I-norm, representations,
// integrated representations, transitive decomposition and isomorphism per
// orbit, fundamental families, the associated partial *-algebra and
// serialization round-trips. Deterministic for a given seed.
std::vector<BatteryLine> run_battery(const GroupoidDocument& doc, const BatteryOptions& opt);

bool battery_passed(const std::vector<BatteryLine>& lines);
std::string format_battery(const std::vector<BatteryLine>& lines);

} // namespace groupalg
