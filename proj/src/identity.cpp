#include "trifi/identity.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

namespace trifi {

unsigned Term::degree() const {
  unsigned total = 0;
  for (const Factor& f : factors) {
    if (const auto* p = std::get_if<PowerFactor>(&f)) total += p->exp;
    if (const auto* m = std::get_if<MapFactor>(&f)) total += m->exp;
  }
  return total;
}

std::size_t Term::map_count() const {
  return static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const Factor& f) {
        return std::holds_alternative<MapFactor>(f);
      }));
}

IdentityError::IdentityError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " (at offset " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

struct Token {
  enum class Kind {
    ident,
    integer,
    star,
    plus,
    minus,
    caret,
    slash,
    lparen,
    rparen,
    equals,
    end
  };
  Kind kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_'))
        ++i;
      tokens.push_back({Token::Kind::ident, std::string(text.substr(start, i - start)),
                        start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      tokens.push_back({Token::Kind::integer,
                        std::string(text.substr(start, i - start)), start});
      continue;
    }
    Token::Kind kind;
    switch (ch) {
      case '*': kind = Token::Kind::star; break;
      case '+': kind = Token::Kind::plus; break;
      case '-': kind = Token::Kind::minus; break;
      case '^': kind = Token::Kind::caret; break;
      case '/': kind = Token::Kind::slash; break;
      case '(': kind = Token::Kind::lparen; break;
      case ')': kind = Token::Kind::rparen; break;
      case '=': kind = Token::Kind::equals; break;
      default:
        throw IdentityError(std::string("unexpected character '") + ch + "'", i);
    }
    tokens.push_back({kind, std::string(1, ch), i});
    ++i;
  }
  tokens.push_back({Token::Kind::end, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  IdentityAst parse() {
    IdentityAst ast;
    ast.sides.push_back(parse_expression());
    if (peek().kind != Token::Kind::equals)
      throw IdentityError("expected '=' between identity sides", peek().offset);
    while (peek().kind == Token::Kind::equals) {
      advance();
      ast.sides.push_back(parse_expression());
    }
    if (peek().kind != Token::Kind::end)
      throw IdentityError("unexpected trailing input", peek().offset);
    check_homogeneous(ast);
    return ast;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t at = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[at];
  }
  const Token& advance() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  unsigned parse_exponent_value(const Token& tok) {
    if (tok.text.size() > 6)
      throw IdentityError("exponent too large", tok.offset);
    unsigned value = static_cast<unsigned>(std::stoul(tok.text));
    if (value < 1) throw IdentityError("exponent must be at least 1", tok.offset);
    return value;
  }

  // power := "X" ["^" integer]
  unsigned parse_power_exponent() {
    const Token& x = advance();  // caller ensured ident "X"
    (void)x;
    if (peek().kind == Token::Kind::caret) {
      advance();
      if (peek().kind != Token::Kind::integer)
        throw IdentityError("expected integer exponent after '^'", peek().offset);
      return parse_exponent_value(advance());
    }
    return 1;
  }

  Factor parse_factor() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::ident) {
      if (tok.text == "X") return PowerFactor{parse_power_exponent()};
      if (peek(1).kind == Token::Kind::lparen) {
        std::string map_name = advance().text;
        advance();  // '('
        const Token& arg = peek();
        if (arg.kind != Token::Kind::ident || arg.text != "X") {
          if (arg.kind == Token::Kind::ident && peek(1).kind == Token::Kind::lparen)
            throw IdentityError("nested map application is not allowed", arg.offset);
          throw IdentityError("map argument must be a power of X", arg.offset);
        }
        unsigned exp = parse_power_exponent();
        if (peek().kind != Token::Kind::rparen)
          throw IdentityError("expected ')' after map argument", peek().offset);
        advance();
        return MapFactor{std::move(map_name), exp};
      }
      return CentralFactor{advance().text};
    }
    if (tok.kind == Token::Kind::integer) {
      if (tok.text == "1") {
        advance();
        return CentralFactor{"1"};
      }
      throw IdentityError(
          "numeric literal in factor position (only the unit literal 1 is allowed)",
          tok.offset);
    }
    throw IdentityError("expected a factor", tok.offset);
  }

  Term parse_term() {
    const std::size_t start = peek().offset;
    Term term;
    term.coeff = 1;
    bool saw_coefficient = false;
    if (peek().kind == Token::Kind::integer &&
        (peek().text != "1" || peek(1).kind == Token::Kind::star ||
         peek(1).kind == Token::Kind::slash ||
         !is_factor_start(peek(1)))) {
      std::string literal = advance().text;
      if (peek().kind == Token::Kind::slash) {
        advance();
        if (peek().kind != Token::Kind::integer)
          throw IdentityError("expected integer denominator", peek().offset);
        const Token& den = advance();
        if (den.text.find_first_not_of('0') == std::string::npos)
          throw IdentityError("zero denominator", den.offset);
        literal += "/" + den.text;
      }
      term.coeff = parse_rational(literal);
      saw_coefficient = true;
    }
    if (saw_coefficient) {
      while (peek().kind == Token::Kind::star) {
        advance();
        term.factors.push_back(parse_factor());
      }
    } else {
      term.factors.push_back(parse_factor());
      while (peek().kind == Token::Kind::star) {
        advance();
        term.factors.push_back(parse_factor());
      }
    }
    if (term.coeff != 0 && term.map_count() != 1)
      throw IdentityError("each nonzero term must apply exactly one map", start);
    return term;
  }

  static bool is_factor_start(const Token& tok) {
    return tok.kind == Token::Kind::ident || tok.kind == Token::Kind::integer;
  }

  Expression parse_expression() {
    Expression expr;
    bool negate = false;
    if (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus)
      negate = advance().kind == Token::Kind::minus;
    Term first = parse_term();
    if (negate) first.coeff = -first.coeff;
    expr.terms.push_back(std::move(first));
    while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
      const bool minus = advance().kind == Token::Kind::minus;
      Term term = parse_term();
      if (minus) term.coeff = -term.coeff;
      expr.terms.push_back(std::move(term));
    }
    return expr;
  }

  void check_homogeneous(const IdentityAst& ast) const {
    std::optional<unsigned> first_degree;
    std::optional<std::size_t> first_side;
    for (std::size_t s = 0; s < ast.sides.size(); ++s)
      for (const Term& term : ast.sides[s].terms) {
        if (term.coeff == 0) continue;
        if (!first_degree) {
          first_degree = term.degree();
          first_side = s;
          continue;
        }
        if (term.degree() != *first_degree) {
          if (s == *first_side)
            throw IdentityError("inhomogeneous terms within a side", 0);
          throw IdentityError("degree mismatch across sides", 0);
        }
      }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void append_symbol(std::vector<std::string>& out, const std::string& symbol) {
  if (std::find(out.begin(), out.end(), symbol) == out.end()) out.push_back(symbol);
}

bool declared(const std::vector<std::string>& table, const std::string& symbol) {
  return std::find(table.begin(), table.end(), symbol) != table.end();
}

}  // namespace

IdentityAst parse_identity(std::string_view text) { return Parser(text).parse(); }

NormalizedIdentity validate_identity(const IdentityAst& ast, const SymbolTable& table) {
  if (ast.sides.size() < 2)
    throw IdentityError("an identity needs at least two sides", 0);

  NormalizedIdentity result;
  result.ast = ast;

  std::optional<unsigned> degree;
  for (const Expression& side : ast.sides)
    for (const Term& term : side.terms) {
      if (term.coeff == 0) continue;
      if (term.map_count() != 1)
        throw IdentityError("each nonzero term must apply exactly one map", 0);
      if (!degree) degree = term.degree();
      if (term.degree() != *degree)
        throw IdentityError("degree mismatch across sides", 0);
    }
  if (!degree) throw IdentityError("identity has no nonzero terms", 0);
  if (*degree < 2) throw IdentityError("n must exceed 1", 0);
  result.degree = *degree;

  for (const Expression& side : ast.sides)
    for (const Term& term : side.terms)
      for (const Factor& factor : term.factors) {
        if (const auto* m = std::get_if<MapFactor>(&factor)) {
          if (!declared(table.maps, m->map))
            throw IdentityError("undeclared map symbol '" + m->map + "'", 0);
          append_symbol(result.map_symbols, m->map);
        } else if (const auto* c = std::get_if<CentralFactor>(&factor)) {
          if (c->symbol == "1") continue;
          if (!declared(table.centrals, c->symbol))
            throw IdentityError("undeclared central symbol '" + c->symbol + "'", 0);
          append_symbol(result.central_symbols, c->symbol);
        }
      }

  for (std::size_t s = 0; s + 1 < ast.sides.size(); ++s) {
    Expression difference = ast.sides[s];
    for (const Term& term : ast.sides[s + 1].terms) {
      Term negated = term;
      negated.coeff = -negated.coeff;
      difference.terms.push_back(std::move(negated));
    }
    result.differences.push_back(std::move(difference));
  }
  return result;
}

NormalizedIdentity validate_identity(const IdentityAst& ast) {
  SymbolTable table;
  for (const Expression& side : ast.sides)
    for (const Term& term : side.terms)
      for (const Factor& factor : term.factors) {
        if (const auto* m = std::get_if<MapFactor>(&factor))
          append_symbol(table.maps, m->map);
        else if (const auto* c = std::get_if<CentralFactor>(&factor))
          if (c->symbol != "1") append_symbol(table.centrals, c->symbol);
      }
  return validate_identity(ast, table);
}

namespace {

std::string print_power(unsigned exp) {
  return exp == 1 ? "X" : "X^" + std::to_string(exp);
}

std::string print_factor(const Factor& factor) {
  if (const auto* p = std::get_if<PowerFactor>(&factor)) return print_power(p->exp);
  if (const auto* m = std::get_if<MapFactor>(&factor))
    return m->map + "(" + print_power(m->exp) + ")";
  return std::get<CentralFactor>(factor).symbol;
}

std::string print_term_magnitude(const Term& term) {
  const Rational magnitude = term.coeff < 0 ? Rational(-term.coeff) : term.coeff;
  std::string out;
  if (term.factors.empty()) return format_rational(magnitude);
  if (magnitude != 1) out = format_rational(magnitude);
  for (const Factor& factor : term.factors) {
    if (!out.empty()) out += "*";
    out += print_factor(factor);
  }
  return out;
}

}  // namespace

std::string pretty_print(const Expression& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.terms.size(); ++i) {
    const Term& term = expr.terms[i];
    if (i == 0) {
      if (term.coeff < 0) out += "-";
    } else {
      out += term.coeff < 0 ? " - " : " + ";
    }
    out += print_term_magnitude(term);
  }
  return out;
}

std::string pretty_print(const IdentityAst& ast) {
  std::string out;
  for (std::size_t s = 0; s < ast.sides.size(); ++s) {
    if (s > 0) out += " = ";
    out += pretty_print(ast.sides[s]);
  }
  return out;
}

bool structurally_equal(const IdentityAst& lhs, const IdentityAst& rhs) {
  if (lhs.sides.size() != rhs.sides.size()) return false;
  for (std::size_t s = 0; s < lhs.sides.size(); ++s) {
    const auto& lt = lhs.sides[s].terms;
    const auto& rt = rhs.sides[s].terms;
    if (lt.size() != rt.size()) return false;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      if (lt[i].coeff != rt[i].coeff) return false;
      if (lt[i].factors.size() != rt[i].factors.size()) return false;
      for (std::size_t f = 0; f < lt[i].factors.size(); ++f) {
        const Factor& lf = lt[i].factors[f];
        const Factor& rf = rt[i].factors[f];
        if (lf.index() != rf.index()) return false;
        if (const auto* lp = std::get_if<PowerFactor>(&lf)) {
          if (lp->exp != std::get<PowerFactor>(rf).exp) return false;
        } else if (const auto* lm = std::get_if<MapFactor>(&lf)) {
          const auto& rm = std::get<MapFactor>(rf);
          if (lm->map != rm.map || lm->exp != rm.exp) return false;
        } else if (std::get<CentralFactor>(lf).symbol !=
                   std::get<CentralFactor>(rf).symbol) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace trifi
