#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ffn/property.hpp"

namespace ffn {

enum class Direction { maximize, minimize };

std::string_view direction_name(Direction d);

/// One optimization problem derived from the predicate: drive the target
/// output variable toward the safe/unsafe boundary.
struct Objective {
  enum class Source { special_structure, per_term };

  Direction direction;
  std::size_t target;
  Source source = Source::per_term;

  friend bool operator==(const Objective& a, const Objective& b) {
    return a.direction == b.direction && a.target == b.target;
  }
};

/// Ordered candidate objectives; the driver round-robins across restarts.
struct ObjectivePlan {
  std::vector<Objective> objectives;
};

/// Derives the objective plan from the predicate. A special structure is a
/// conjunct/disjunct group whose leaves all relate one common variable on
/// the left through the same operator class ({<=,<} or {>=,>}); such a
/// group yields a single objective (maximize for {<=,<}, minimize for
/// {>=,>}). When the whole predicate is one such group, or a top-level
/// chain of them, those objectives form the plan. Otherwise every leaf
/// contributes a per-term objective (plus the dual for var-var leaves),
/// deduplicated preserving first occurrence.
ObjectivePlan analyze_spec(const Predicate& p);

/// Projects the comparable scalar for the objective out of an output
/// vector; callers take max/min of it per the objective's direction.
double objective_value(const Objective& obj, std::span<const double> y);

}  // namespace ffn
