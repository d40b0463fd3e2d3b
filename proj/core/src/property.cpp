#include "ffn/property.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "ffn/errors.hpp"

namespace ffn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string format_double(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Predicate expression parser (recursive descent, left-associative):
//   or-expr  := and-expr ('or' and-expr)*
//   and-expr := primary ('and' primary)*
//   primary  := '(' or-expr ')' | rel
//   rel      := var op (var | number)
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { lparen, rparen, kw_and, kw_or, var, number, op, end };
  Kind kind;
  std::size_t pos;       // character offset in the expression text
  std::size_t var = 0;   // 0-based output index
  double number = 0.0;
  RelOp op = RelOp::le;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t pos) const {
    throw SyntaxError("predicate: " + what + " at position " +
                      std::to_string(pos));
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_.kind = Token::Kind::end;
      return;
    }
    const char c = text_[pos_];
    if (c == '(') {
      current_.kind = Token::Kind::lparen;
      ++pos_;
      return;
    }
    if (c == ')') {
      current_.kind = Token::Kind::rparen;
      ++pos_;
      return;
    }
    if (c == '<' || c == '>') {
      const bool eq = pos_ + 1 < text_.size() && text_[pos_ + 1] == '=';
      if (c == '<')
        current_.op = eq ? RelOp::le : RelOp::lt;
      else
        current_.op = eq ? RelOp::ge : RelOp::gt;
      current_.kind = Token::Kind::op;
      pos_ += eq ? 2 : 1;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[end])))
        ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      if (word == "and") {
        current_.kind = Token::Kind::kw_and;
      } else if (word == "or") {
        current_.kind = Token::Kind::kw_or;
      } else if (word.size() > 1 && (word[0] == 'o' || word[0] == 'O')) {
        std::size_t idx = 0;
        auto [p, ec] =
            std::from_chars(word.data() + 1, word.data() + word.size(), idx);
        if (ec != std::errc() || p != word.data() + word.size() || idx == 0)
          fail("unknown identifier '" + std::string(word) + "'", pos_);
        current_.kind = Token::Kind::var;
        current_.var = idx - 1;  // files are 1-based
      } else {
        throw UnknownVariable("predicate: unknown identifier '" +
                              std::string(word) + "' at position " +
                              std::to_string(pos_));
      }
      pos_ = end;
      return;
    }
    if (c == '-' || c == '+' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [p, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc()) fail("malformed number", pos_);
      current_.kind = Token::Kind::number;
      current_.number = value;
      pos_ = static_cast<std::size_t>(p - text_.data());
      return;
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{};
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : lex_(text) {}

  PredicatePtr parse() {
    PredicatePtr p = parse_or();
    if (lex_.peek().kind != Token::Kind::end)
      throw SyntaxError("predicate: trailing input at position " +
                        std::to_string(lex_.peek().pos));
    return p;
  }

 private:
  PredicatePtr parse_or() {
    PredicatePtr left = parse_and();
    while (lex_.peek().kind == Token::Kind::kw_or) {
      lex_.take();
      left = Predicate::disj(std::move(left), parse_and());
    }
    return left;
  }

  PredicatePtr parse_and() {
    PredicatePtr left = parse_primary();
    while (lex_.peek().kind == Token::Kind::kw_and) {
      lex_.take();
      left = Predicate::conj(std::move(left), parse_primary());
    }
    return left;
  }

  PredicatePtr parse_primary() {
    if (lex_.peek().kind == Token::Kind::lparen) {
      lex_.take();
      PredicatePtr inner = parse_or();
      if (lex_.peek().kind != Token::Kind::rparen)
        throw SyntaxError("predicate: expected ')' at position " +
                          std::to_string(lex_.peek().pos));
      lex_.take();
      return inner;
    }
    return parse_rel();
  }

  PredicatePtr parse_rel() {
    const Token lhs = expect(Token::Kind::var, "output variable");
    const Token op = expect(Token::Kind::op, "relational operator");
    const Token rhs = lex_.take();
    if (rhs.kind == Token::Kind::var)
      return Predicate::var_var(lhs.var, op.op, rhs.var);
    if (rhs.kind == Token::Kind::number)
      return Predicate::var_const(lhs.var, op.op, rhs.number);
    throw SyntaxError("predicate: expected variable or constant at position " +
                      std::to_string(rhs.pos));
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (lex_.peek().kind != kind)
      throw SyntaxError("predicate: expected " + what + " at position " +
                        std::to_string(lex_.peek().pos));
    return lex_.take();
  }

  Lexer lex_;
};

double parse_bound(std::string_view text, std::size_t stmt_index) {
  const std::string_view t = trim(text);
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  double value = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || p != t.data() + t.size())
    throw SyntaxError("statement " + std::to_string(stmt_index) +
                      ": malformed numeric bound '" + std::string(t) + "'");
  return value;
}

}  // namespace

bool Interval::finite() const {
  return std::isfinite(lower) && std::isfinite(upper);
}

bool DomainBox::finite() const {
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const Interval& i) { return i.finite(); });
}

bool DomainBox::contains(std::span<const double> x) const {
  if (x.size() != bounds.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!bounds[i].contains(x[i])) return false;
  return true;
}

std::string_view rel_op_symbol(RelOp op) {
  switch (op) {
    case RelOp::le:
      return "<=";
    case RelOp::ge:
      return ">=";
    case RelOp::lt:
      return "<";
    case RelOp::gt:
      return ">";
  }
  return "<=";
}

PredicatePtr Predicate::conj(PredicatePtr l, PredicatePtr r) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::conj;
  p->lhs = std::move(l);
  p->rhs = std::move(r);
  return p;
}

PredicatePtr Predicate::disj(PredicatePtr l, PredicatePtr r) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::disj;
  p->lhs = std::move(l);
  p->rhs = std::move(r);
  return p;
}

PredicatePtr Predicate::var_var(std::size_t a, RelOp op, std::size_t b) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::var_var;
  p->var_a = a;
  p->op = op;
  p->var_b = b;
  return p;
}

PredicatePtr Predicate::var_const(std::size_t a, RelOp op, double c) {
  auto p = std::make_shared<Predicate>();
  p->kind = Kind::var_const;
  p->var_a = a;
  p->op = op;
  p->constant = c;
  return p;
}

SafetyProperty parse_property(std::string_view text,
                              std::string_view default_name) {
  SafetyProperty prop;
  prop.name = std::string(default_name);

  // Per-input constraints, keyed by 0-based input index; merged by
  // intersection so repeated lines tighten the box.
  std::vector<Interval> bounds;
  auto bound_at = [&bounds](std::size_t idx) -> Interval& {
    if (idx >= bounds.size()) bounds.resize(idx + 1, Interval{-kInf, kInf});
    return bounds[idx];
  };

  std::size_t stmt_index = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find_first_of(";\n", pos);
    std::string_view stmt = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos);
    pos = next == std::string_view::npos ? text.size() + 1 : next + 1;

    if (const std::size_t hash = stmt.find('#'); hash != std::string_view::npos)
      stmt = stmt.substr(0, hash);
    stmt = trim(stmt);
    if (stmt.empty()) continue;
    ++stmt_index;

    if (stmt.starts_with("name:")) {
      prop.name = std::string(trim(stmt.substr(5)));
      continue;
    }
    if (stmt.starts_with("predicate:")) {
      // The predicate is the final declaration; anything after the colon to
      // the end of this statement is the expression.
      prop.predicate = ExprParser(trim(stmt.substr(10))).parse();
      continue;
    }

    // Domain line: "xK >= c" | "xK <= c" | "xK in [a,b]".
    if (stmt.size() < 2 || (stmt[0] != 'x' && stmt[0] != 'X'))
      throw UnknownVariable("statement " + std::to_string(stmt_index) +
                            ": expected input variable, got '" +
                            std::string(stmt) + "'");
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(stmt.data() + 1, stmt.data() + stmt.size(), idx);
    if (ec != std::errc() || idx == 0)
      throw UnknownVariable("statement " + std::to_string(stmt_index) +
                            ": malformed input variable in '" +
                            std::string(stmt) + "'");
    Interval& iv = bound_at(idx - 1);
    std::string_view rest = trim(stmt.substr(p - stmt.data()));

    if (rest.starts_with("in")) {
      rest = trim(rest.substr(2));
      if (!rest.starts_with("[") || !rest.ends_with("]"))
        throw SyntaxError("statement " + std::to_string(stmt_index) +
                          ": expected interval [a,b]");
      rest = rest.substr(1, rest.size() - 2);
      const std::size_t comma = rest.find(',');
      if (comma == std::string_view::npos)
        throw SyntaxError("statement " + std::to_string(stmt_index) +
                          ": expected two comma-separated bounds");
      iv.lower = std::max(iv.lower, parse_bound(rest.substr(0, comma), stmt_index));
      iv.upper = std::min(iv.upper, parse_bound(rest.substr(comma + 1), stmt_index));
    } else if (rest.starts_with(">=")) {
      iv.lower = std::max(iv.lower, parse_bound(rest.substr(2), stmt_index));
    } else if (rest.starts_with("<=")) {
      iv.upper = std::min(iv.upper, parse_bound(rest.substr(2), stmt_index));
    } else {
      throw SyntaxError("statement " + std::to_string(stmt_index) +
                        ": expected '>=', '<=' or 'in' after input variable");
    }
    if (iv.lower > iv.upper)
      throw SyntaxError("statement " + std::to_string(stmt_index) +
                        ": empty interval for x" + std::to_string(idx));
  }

  if (!prop.predicate)
    throw SyntaxError("property has no 'predicate:' declaration");
  prop.domain.bounds = std::move(bounds);
  return prop;
}

std::string print_predicate(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::conj:
      return "(" + print_predicate(*p.lhs) + " and " + print_predicate(*p.rhs) +
             ")";
    case Predicate::Kind::disj:
      return "(" + print_predicate(*p.lhs) + " or " + print_predicate(*p.rhs) +
             ")";
    case Predicate::Kind::var_var:
      return "o" + std::to_string(p.var_a + 1) + " " +
             std::string(rel_op_symbol(p.op)) + " o" +
             std::to_string(p.var_b + 1);
    case Predicate::Kind::var_const:
      return "o" + std::to_string(p.var_a + 1) + " " +
             std::string(rel_op_symbol(p.op)) + " " + format_double(p.constant);
  }
  return "";
}

std::string print_property(const SafetyProperty& prop) {
  std::ostringstream out;
  out << "name: " << prop.name << "\n";
  for (std::size_t i = 0; i < prop.domain.bounds.size(); ++i) {
    const Interval& iv = prop.domain.bounds[i];
    const std::string var = "x" + std::to_string(i + 1);
    if (iv.finite()) {
      out << var << " in [" << format_double(iv.lower) << ","
          << format_double(iv.upper) << "]\n";
    } else {
      if (iv.lower != -kInf)
        out << var << " >= " << format_double(iv.lower) << "\n";
      if (iv.upper != kInf)
        out << var << " <= " << format_double(iv.upper) << "\n";
    }
  }
  out << "predicate: " << print_predicate(*prop.predicate) << "\n";
  return out.str();
}

bool predicate_equal(const Predicate& a, const Predicate& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Predicate::Kind::conj:
    case Predicate::Kind::disj:
      return predicate_equal(*a.lhs, *b.lhs) && predicate_equal(*a.rhs, *b.rhs);
    case Predicate::Kind::var_var:
      return a.var_a == b.var_a && a.op == b.op && a.var_b == b.var_b;
    case Predicate::Kind::var_const:
      return a.var_a == b.var_a && a.op == b.op && a.constant == b.constant;
  }
  return false;
}

std::size_t max_output_index(const Predicate& p) {
  switch (p.kind) {
    case Predicate::Kind::conj:
    case Predicate::Kind::disj:
      return std::max(max_output_index(*p.lhs), max_output_index(*p.rhs));
    case Predicate::Kind::var_var:
      return std::max(p.var_a, p.var_b);
    case Predicate::Kind::var_const:
      return p.var_a;
  }
  return 0;
}

namespace {

bool rel_holds(RelOp op, double a, double b) {
  switch (op) {
    case RelOp::le:
      return a <= b;
    case RelOp::ge:
      return a >= b;
    case RelOp::lt:
      return a < b;
    case RelOp::gt:
      return a > b;
  }
  return false;
}

}  // namespace

bool phi_eval(const Predicate& p, std::span<const double> y) {
  switch (p.kind) {
    case Predicate::Kind::conj:
      return phi_eval(*p.lhs, y) && phi_eval(*p.rhs, y);
    case Predicate::Kind::disj:
      return phi_eval(*p.lhs, y) || phi_eval(*p.rhs, y);
    case Predicate::Kind::var_var:
      if (p.var_a >= y.size() || p.var_b >= y.size())
        throw IndexOutOfRange("phi_eval: output variable out of range");
      return rel_holds(p.op, y[p.var_a], y[p.var_b]);
    case Predicate::Kind::var_const:
      if (p.var_a >= y.size())
        throw IndexOutOfRange("phi_eval: output variable out of range");
      return rel_holds(p.op, y[p.var_a], p.constant);
  }
  return false;
}

std::vector<double> sample_uniform(const DomainBox& box, Rng& rng) {
  std::vector<double> x(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Interval& iv = box.bounds[i];
    if (!iv.finite())
      throw UnboundedDomain("sample_uniform: dimension " + std::to_string(i) +
                            " is unbounded");
    x[i] = rng.uniform(iv.lower, iv.upper);
  }
  return x;
}

}  // namespace ffn
