#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ballotree/tree.hpp"

namespace ballotree {

/// Arithmetic mod 3. Construction normalizes, so -1 is the element 2.
struct F3 {
  int value = 0;

  constexpr F3() = default;
  constexpr F3(int v) : value(((v % 3) + 3) % 3) {}

  friend constexpr F3 operator+(F3 a, F3 b) { return F3(a.value + b.value); }
  friend constexpr F3 operator-(F3 a) { return F3(-a.value); }
  friend constexpr F3 operator-(F3 a, F3 b) { return F3(a.value - b.value); }
  friend constexpr F3 operator*(F3 a, F3 b) { return F3(a.value * b.value); }
  friend constexpr bool operator==(F3 a, F3 b) { return a.value == b.value; }
};

/// Immutable polynomial expression over F3: constants, named variables,
/// negation, addition, multiplication, squaring. Binary subtraction is
/// sugar for adding the negation.
class GateExpr {
 public:
  enum class Kind { constant, variable, negate, add, multiply, square };

  static GateExpr constant(F3 v);
  static GateExpr variable(std::string name);

  GateExpr operator-() const;
  GateExpr squared() const;
  friend GateExpr operator+(const GateExpr& a, const GateExpr& b);
  friend GateExpr operator-(const GateExpr& a, const GateExpr& b);
  friend GateExpr operator*(const GateExpr& a, const GateExpr& b);

  Kind kind() const;
  F3 constant_value() const;               // constants only
  const std::string& variable_name() const;  // variables only
  const GateExpr& left() const;   // first operand (the only one for unary)
  const GateExpr& right() const;  // second operand of add/multiply

  /// Deep structural equality.
  bool operator==(const GateExpr& other) const;

 private:
  struct Node;
  explicit GateExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Variable names in first-appearance (left-to-right) order.
std::vector<std::string> expr_variables(const GateExpr& e);

/// Fully parenthesized infix text, e.g. "((x * y) + 2)".
std::string to_text(const GateExpr& e);

/// Infix grammar: + - (binary and unary), *, ^2, parentheses, constants
/// 0/1/2, identifier variables. Malformed text raises parse_error.
GateExpr parse_expr(std::string_view text);

/// Uniformly shaped random expression over the given variables, at most
/// max_depth operator levels. Deterministic per seed.
GateExpr random_expr(int max_depth, std::span<const std::string> variables,
                     std::uint64_t seed);

using F3Assignment = std::map<std::string, F3>;

/// Direct field evaluation; the reference the compiled trees are checked
/// against. Unassigned variables raise binding_error.
F3 eval_expr(const GateExpr& e, const F3Assignment& assignment);

/// Gates over subtrees. Each computes its stated function of the
/// subtrees' winners on both 3-cycle directions; candidate labels double
/// as the field elements.
VotingTree yield_gate(VotingTree x);       // clockwise x-1, counter x+1
VotingTree pair_gate(VotingTree x, VotingTree y);
VotingTree neg_sum_gate(VotingTree x, VotingTree y);  // -x-y
VotingTree negate_gate(VotingTree x);                 // -x
VotingTree add_gate(VotingTree x, VotingTree y);      // x+y
VotingTree square_first_half(VotingTree x);
VotingTree square_second_half(VotingTree y);
VotingTree square_gate(VotingTree x);                 // x^2
VotingTree multiply_gate(VotingTree x, VotingTree y);  // x*y

/// Lowers the expression through the gates; variables become variable
/// leaves. The declared-set overload rejects undeclared variables with
/// compile_error.
VotingTree compile_expr(const GateExpr& e);
VotingTree compile_expr(const GateExpr& e,
                        std::span<const std::string> declared);

/// Winner of t on the chosen 3-cycle, read as a field element. Candidate
/// labels must lie in {0,1,2}; every variable needs a binding.
F3 eval_f3(VotingTree t, Direction d, const Bindings& assignment = {});

}  // namespace ballotree
