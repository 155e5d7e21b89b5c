#pragma once

#include "trifi/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trifi {

// One-variable functional-identity language, e.g.
//   Psi(X^3) = g*X^2*Omega(X) = g*Omega(X)*X^2
// "*" is mandatory and non-commutative; "^" binds tighter; "1" in factor
// position denotes the algebra unit.

struct PowerFactor {
  unsigned exp = 1;  // X^exp, exp >= 1
};

struct MapFactor {
  std::string map;
  unsigned exp = 1;  // map(X^exp)
};

struct CentralFactor {
  std::string symbol;  // declared central symbol; "1" = unit
};

using Factor = std::variant<PowerFactor, MapFactor, CentralFactor>;

struct Term {
  Rational coeff;
  std::vector<Factor> factors;  // ordered, product is non-commutative
  unsigned degree() const;      // total X-degree across factors
  std::size_t map_count() const;
};

struct Expression {
  std::vector<Term> terms;
};

// Invariants (enforced by parse_identity): >= 2 sides; every term with a
// nonzero coefficient carries exactly one map application; all nonzero terms
// across all sides share one total X-degree.
struct IdentityAst {
  std::vector<Expression> sides;
};

class IdentityError : public std::runtime_error {
 public:
  IdentityError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

IdentityAst parse_identity(std::string_view text);

struct SymbolTable {
  std::vector<std::string> maps;
  std::vector<std::string> centrals;  // "1" is implicitly declared
};

struct NormalizedIdentity {
  IdentityAst ast;
  unsigned degree = 0;
  std::vector<std::string> map_symbols;      // first-appearance order
  std::vector<std::string> central_symbols;  // first-appearance order, no "1"
  std::vector<Expression> differences;       // side_i - side_{i+1}, each == 0
};

// Rejects degree < 2, undeclared symbols, and (for hand-built ASTs) the
// structural invariants parse_identity already guarantees.
NormalizedIdentity validate_identity(const IdentityAst& ast, const SymbolTable& table);
NormalizedIdentity validate_identity(const IdentityAst& ast);  // symbols inferred

std::string pretty_print(const IdentityAst& ast);
std::string pretty_print(const Expression& expr);

bool structurally_equal(const IdentityAst& lhs, const IdentityAst& rhs);

}  // namespace trifi
