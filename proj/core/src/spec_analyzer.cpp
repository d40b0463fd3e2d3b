#include "ffn/spec_analyzer.hpp"

#include <algorithm>
#include <optional>

#include "ffn/errors.hpp"

namespace ffn {

namespace {

bool is_upper_op(RelOp op) { return op == RelOp::le || op == RelOp::lt; }

void collect_leaves(const Predicate& p, std::vector<const Predicate*>& out) {
  if (p.kind == Predicate::Kind::conj || p.kind == Predicate::Kind::disj) {
    collect_leaves(*p.lhs, out);
    collect_leaves(*p.rhs, out);
  } else {
    out.push_back(&p);
  }
}

/// Table-style group: all leaves share the left variable and operator class.
std::optional<Objective> common_variable_objective(const Predicate& group) {
  std::vector<const Predicate*> leaves;
  collect_leaves(group, leaves);
  const std::size_t var = leaves.front()->var_a;
  const bool upper = is_upper_op(leaves.front()->op);
  for (const Predicate* leaf : leaves) {
    if (leaf->var_a != var || is_upper_op(leaf->op) != upper)
      return std::nullopt;
  }
  return Objective{upper ? Direction::maximize : Direction::minimize, var,
                   Objective::Source::special_structure};
}

/// Flattens a chain of same-kind top-level connectives into its operand
/// groups, e.g. (A or B) or C -> {A, B, C}.
void flatten_chain(const Predicate& p, Predicate::Kind kind,
                   std::vector<const Predicate*>& out) {
  if (p.kind == kind) {
    flatten_chain(*p.lhs, kind, out);
    flatten_chain(*p.rhs, kind, out);
  } else {
    out.push_back(&p);
  }
}

void push_unique(std::vector<Objective>& plan, Objective obj) {
  if (std::find(plan.begin(), plan.end(), obj) == plan.end())
    plan.push_back(obj);
}

}  // namespace

std::string_view direction_name(Direction d) {
  return d == Direction::maximize ? "maximize" : "minimize";
}

ObjectivePlan analyze_spec(const Predicate& p) {
  ObjectivePlan plan;

  // Whole predicate as one common-variable group.
  if (auto obj = common_variable_objective(p)) {
    plan.objectives.push_back(*obj);
    return plan;
  }

  // Chain of common-variable groups joined by one top-level connective.
  if (p.kind == Predicate::Kind::conj || p.kind == Predicate::Kind::disj) {
    std::vector<const Predicate*> groups;
    flatten_chain(p, p.kind, groups);
    std::vector<Objective> candidates;
    bool all_match = true;
    for (const Predicate* g : groups) {
      if (auto obj = common_variable_objective(*g)) {
        push_unique(candidates, *obj);
      } else {
        all_match = false;
        break;
      }
    }
    if (all_match) {
      plan.objectives = std::move(candidates);
      return plan;
    }
  }

  // Per-term fallback: one objective per leaf, plus the dual for var-var
  // leaves; constants contribute nothing to optimize.
  std::vector<const Predicate*> leaves;
  collect_leaves(p, leaves);
  for (const Predicate* leaf : leaves) {
    const Direction dir =
        is_upper_op(leaf->op) ? Direction::maximize : Direction::minimize;
    push_unique(plan.objectives,
                Objective{dir, leaf->var_a, Objective::Source::per_term});
    if (leaf->kind == Predicate::Kind::var_var) {
      const Direction dual =
          dir == Direction::maximize ? Direction::minimize : Direction::maximize;
      push_unique(plan.objectives,
                  Objective{dual, leaf->var_b, Objective::Source::per_term});
    }
  }
  return plan;
}

double objective_value(const Objective& obj, std::span<const double> y) {
  if (obj.target >= y.size())
    throw IndexOutOfRange("objective_value: target " +
                          std::to_string(obj.target) +
                          " out of range for output of length " +
                          std::to_string(y.size()));
  return y[obj.target];
}

}  // namespace ffn
