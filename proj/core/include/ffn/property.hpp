#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffn/rng.hpp"

namespace ffn {

/// Closed interval; either side may be infinite.
struct Interval {
  double lower;
  double upper;

  double width() const { return upper - lower; }
  bool finite() const;
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// Axis-aligned input domain D = [l_1,u_1] x ... x [l_n,u_n], physical units.
struct DomainBox {
  std::vector<Interval> bounds;

  std::size_t dim() const { return bounds.size(); }
  bool finite() const;
  bool contains(std::span<const double> x) const;
};

enum class RelOp { le, ge, lt, gt };

std::string_view rel_op_symbol(RelOp op);

/// Predicate AST over output variables o_0..o_{m-1} (0-based internally).
struct Predicate;
using PredicatePtr = std::shared_ptr<const Predicate>;

struct Predicate {
  enum class Kind { conj, disj, var_var, var_const };

  Kind kind;
  PredicatePtr lhs;        // conj / disj
  PredicatePtr rhs;        // conj / disj
  std::size_t var_a = 0;   // left variable of a relation
  RelOp op = RelOp::le;    // relation operator
  std::size_t var_b = 0;   // right variable (var_var)
  double constant = 0.0;   // right constant (var_const)

  static PredicatePtr conj(PredicatePtr l, PredicatePtr r);
  static PredicatePtr disj(PredicatePtr l, PredicatePtr r);
  static PredicatePtr var_var(std::size_t a, RelOp op, std::size_t b);
  static PredicatePtr var_const(std::size_t a, RelOp op, double c);
};

struct SafetyProperty {
  std::string name;
  DomainBox domain;
  PredicatePtr predicate;
};

/// Parses a property document: one declaration per line (or ';'-separated),
/// '#' comments, domain lines "xK >= c" / "xK <= c" / "xK in [a,b]",
/// an optional "name: <id>" line, and a final "predicate: <expr>".
/// Output variables are 1-based in files (o1..om), 0-based in the AST.
/// The returned DomainBox covers inputs x1..x<max mentioned index>;
/// undeclared sides are infinite.
SafetyProperty parse_property(std::string_view text,
                              std::string_view default_name = "property");

/// Renders a property back to the concrete syntax; parse(print(p)) is
/// structurally identical to p.
std::string print_property(const SafetyProperty& prop);
std::string print_predicate(const Predicate& p);

/// Structural equality of ASTs.
bool predicate_equal(const Predicate& a, const Predicate& b);

/// Largest output index mentioned in the predicate.
std::size_t max_output_index(const Predicate& p);

/// Evaluates the predicate on a concrete output vector.
/// Throws IndexOutOfRange when a variable index >= y.size().
bool phi_eval(const Predicate& p, std::span<const double> y);

/// Draws one point uniformly from the box, componentwise independent.
/// Throws UnboundedDomain if any side is infinite.
std::vector<double> sample_uniform(const DomainBox& box, Rng& rng);

}  // namespace ffn
