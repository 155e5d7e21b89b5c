#include "trifi/constraint.hpp"

#include "trifi/classify.hpp"
#include "trifi/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace trifi {
namespace {

constexpr std::uint64_t kVerifySeed = 0x766572696679ULL;
constexpr int kCombinationSamples = 20;
constexpr int kPointwiseSamples = 100;

// All non-decreasing index tuples of length n over 0..d-1, lexicographic.
std::vector<std::vector<Index>> basis_multisets(Index d, unsigned n) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> current(n, 0);
  for (;;) {
    out.push_back(current);
    int p = static_cast<int>(n) - 1;
    while (p >= 0 && current[p] == d - 1) --p;
    if (p < 0) break;
    ++current[p];
    for (std::size_t q = p + 1; q < n; ++q) current[q] = current[p];
  }
  return out;
}

Rational multiset_multiplicity(const std::vector<Index>& sorted_tuple) {
  Rational result = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted_tuple.size(); ++i) {
    if (i < sorted_tuple.size() && sorted_tuple[i] == sorted_tuple[i - 1]) {
      ++run;
      continue;
    }
    for (std::size_t f = 2; f <= run; ++f) result *= static_cast<long>(f);
    run = 1;
  }
  return result;
}

// coeff * (post . F . arg) accumulated into a d x total block at col_offset:
// coordinate r of post*F*arg carries post(r,s)*arg(c) at vec index c*d + s.
void accumulate_map_term(Mat& block, Index col_offset, const Rational& coeff,
                         const Mat& post, const Vec& arg) {
  const Index d = post.rows();
  for (Index c = 0; c < d; ++c) {
    if (arg(c) == 0) continue;
    for (Index s = 0; s < d; ++s)
      for (Index r = 0; r < d; ++r) {
        if (post(r, s) == 0) continue;
        block(r, col_offset + c * d + s) += coeff * post(r, s) * arg(c);
      }
  }
}

struct ResolvedSymbols {
  std::map<std::string, Element> centrals;  // includes "1"
  const std::map<std::string, LinearMap>* fixed_maps;
};

// Evaluation of one term at a concrete argument tuple. Either the term is
// linear in one unknown map (prefix * F(map_arg) * suffix) or fully concrete.
struct TermContribution {
  bool has_unknown = false;
  std::string symbol;
  Vec prefix;
  Vec map_arg;
  Vec suffix;
  Vec concrete;
};

TermContribution evaluate_term_at(const Term& term, const Algebra& algebra,
                                  const std::vector<Index>& args,
                                  const ResolvedSymbols& symbols,
                                  const UnknownLayout& layout) {
  const Index d = algebra.dim();
  TermContribution out;
  Vec acc = algebra.unit();
  std::size_t pos = 0;

  auto consume_product = [&](unsigned count) {
    Vec value = algebra.unit();
    for (unsigned k = 0; k < count; ++k) value = algebra.multiply(value, unit_vec(d, args[pos++]));
    return value;
  };

  for (const Factor& factor : term.factors) {
    if (const auto* p = std::get_if<PowerFactor>(&factor)) {
      acc = algebra.multiply(acc, consume_product(p->exp));
    } else if (const auto* c = std::get_if<CentralFactor>(&factor)) {
      acc = algebra.multiply(acc, symbols.centrals.at(c->symbol));
    } else {
      const auto& m = std::get<MapFactor>(factor);
      Vec arg_value = consume_product(m.exp);
      auto fixed = symbols.fixed_maps->find(m.map);
      if (fixed != symbols.fixed_maps->end()) {
        acc = algebra.multiply(acc, Vec(fixed->second * arg_value));
      } else if (layout.has(m.map)) {
        out.has_unknown = true;
        out.symbol = m.map;
        out.prefix = acc;
        out.map_arg = std::move(arg_value);
        acc = algebra.unit();  // suffix accumulates from here
      } else {
        throw std::invalid_argument("unresolved map symbol '" + m.map + "'");
      }
    }
  }
  if (out.has_unknown)
    out.suffix = acc;
  else
    out.concrete = acc;
  return out;
}

Element gamma_of(const NormalizedIdentity& identity, const Algebra& algebra,
                 const Binding& binding) {
  if (identity.central_symbols.empty()) return algebra.unit();
  return binding.centrals.at(identity.central_symbols.front()).value;
}

}  // namespace

Index UnknownLayout::offset(const std::string& symbol) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == symbol) return static_cast<Index>(i) * dim * dim;
  throw std::invalid_argument("unknown map symbol '" + symbol + "'");
}

bool UnknownLayout::has(const std::string& symbol) const {
  return std::find(symbols.begin(), symbols.end(), symbol) != symbols.end();
}

CompiledSystem compile_constraints(const NormalizedIdentity& identity,
                                   const Algebra& algebra, const Binding& binding) {
  const Index d = algebra.dim();
  const unsigned n = identity.degree;

  ResolvedSymbols symbols;
  symbols.fixed_maps = &binding.fixed_maps;
  symbols.centrals["1"] = algebra.unit();
  for (const std::string& name : identity.central_symbols) {
    auto found = binding.centrals.find(name);
    if (found == binding.centrals.end())
      throw std::invalid_argument("unresolved central symbol '" + name + "'");
    const CentralBinding& central = found->second;
    if (central.value.size() != d)
      throw std::invalid_argument("central binding '" + name + "' has wrong dimension");
    if (!algebra.is_central(central.value))
      throw std::invalid_argument("central binding '" + name + "' is not central");
    if (central.require_invertible && !algebra.invert(central.value))
      throw std::invalid_argument("central binding '" + name + "' is not invertible");
    symbols.centrals[name] = central.value;
  }
  for (const auto& [name, matrix] : binding.fixed_maps)
    if (matrix.rows() != d || matrix.cols() != d)
      throw std::invalid_argument("fixed map '" + name + "' has wrong dimension");

  CompiledSystem system;
  system.layout.dim = d;
  for (const std::string& name : identity.map_symbols)
    if (!binding.fixed_maps.count(name)) system.layout.symbols.push_back(name);

  for (const std::string& name : binding.unit_in_center)
    if (!system.layout.has(name))
      throw std::invalid_argument("side constraint on non-unknown map '" + name + "'");
  for (const auto& [lhs, rhs] : binding.ties)
    if (!system.layout.has(lhs) || !system.layout.has(rhs))
      throw std::invalid_argument("tie constraint on non-unknown map");

  const auto multisets = basis_multisets(d, n);
  const Index total = system.layout.total();
  system.core_rows =
      static_cast<Index>(identity.differences.size() * multisets.size()) * d;
  const Index side_rows =
      static_cast<Index>(binding.unit_in_center.size()) * d +
      static_cast<Index>(binding.ties.size()) * d * d;
  system.rows = Mat::Zero(system.core_rows + side_rows, total);
  system.constants = Vec::Zero(system.core_rows + side_rows);

  Index at = 0;
  for (const Expression& difference : identity.differences) {
    for (const auto& multiset : multisets) {
      Mat block = Mat::Zero(d, total);
      Vec constant_block = Vec::Zero(d);
      const Rational multiplicity = multiset_multiplicity(multiset);
      std::vector<Index> arrangement = multiset;
      do {
        for (const Term& term : difference.terms) {
          if (term.coeff == 0) continue;
          TermContribution piece =
              evaluate_term_at(term, algebra, arrangement, symbols, system.layout);
          const Rational scale = term.coeff * multiplicity;
          if (piece.has_unknown) {
            Mat post = algebra.left_mult(piece.prefix) * algebra.right_mult(piece.suffix);
            accumulate_map_term(block, system.layout.offset(piece.symbol), scale,
                                post, piece.map_arg);
          } else {
            constant_block += scale * piece.concrete;
          }
        }
      } while (std::next_permutation(arrangement.begin(), arrangement.end()));
      system.rows.middleRows(at, d) = block;
      system.constants.segment(at, d) = constant_block;
      at += d;
    }
  }

  if (!binding.unit_in_center.empty()) {
    const Subspace center = algebra.center();
    Mat residual = Mat::Identity(d, d);
    for (Index t = 0; t < center.dim(); ++t)
      residual.col(center.pivots()[t]) -= center.basis_vector(t);
    for (const std::string& name : binding.unit_in_center) {
      Mat block = Mat::Zero(d, total);
      accumulate_map_term(block, system.layout.offset(name), 1, residual,
                          algebra.unit());
      system.rows.middleRows(at, d) = block;
      at += d;
    }
  }
  for (const auto& [lhs, rhs] : binding.ties) {
    const Index lhs_offset = system.layout.offset(lhs);
    const Index rhs_offset = system.layout.offset(rhs);
    for (Index k = 0; k < d * d; ++k) {
      system.rows(at, lhs_offset + k) = 1;
      system.rows(at, rhs_offset + k) = -1;
      ++at;
    }
  }
  return system;
}

SolutionSpace solve_identity(const NormalizedIdentity& identity,
                             const Algebra& algebra, const Binding& binding) {
  for (const std::string& name : identity.map_symbols)
    if (binding.fixed_maps.count(name))
      throw std::invalid_argument("solve_identity requires every map unknown");
  CompiledSystem system = compile_constraints(identity, algebra, binding);

  SolutionSpace solution;
  solution.layout = system.layout;
  solution.space = nullspace(system.rows);
  const Index d = algebra.dim();
  for (Index i = 0; i < solution.space.dim(); ++i) {
    Vec v = solution.space.basis_vector(i);
    std::vector<LinearMap> tuple;
    tuple.reserve(solution.layout.symbols.size());
    for (std::size_t u = 0; u < solution.layout.symbols.size(); ++u)
      tuple.push_back(
          unvectorize(v.segment(static_cast<Index>(u) * d * d, d * d), d, d));
    solution.decoded_basis.push_back(std::move(tuple));
  }
  return solution;
}

Subspace predicted_central_pairs(const Algebra& algebra, const Element& gamma) {
  if (!algebra.is_central(gamma))
    throw std::invalid_argument("predicted_central_pairs: gamma is not central");
  const Index d = algebra.dim();
  const Subspace center = algebra.center();
  Mat rows(center.dim(), 2 * d * d);
  for (Index t = 0; t < center.dim(); ++t) {
    Vec c = center.basis_vector(t);
    rows.row(t).segment(0, d * d) =
        vectorize(algebra.left_mult(algebra.multiply(gamma, c)));
    rows.row(t).segment(d * d, d * d) = vectorize(algebra.left_mult(c));
  }
  return Subspace::from_spanning_rows(2 * d * d, rows);
}

Subspace predicted_generalized_space(const Algebra& algebra, unsigned n) {
  if (n < 2) throw std::invalid_argument("predicted_generalized_space: n must exceed 1");
  const Index d = algebra.dim();
  const Subspace derivations = derivation_space(algebra);
  const Subspace center = algebra.center();
  Mat rows(derivations.dim() + center.dim(), 2 * d * d);
  const Rational inv_n(1, static_cast<long>(n));
  for (Index t = 0; t < derivations.dim(); ++t) {
    Vec w = derivations.basis_vector(t);
    rows.row(t).segment(0, d * d) = (inv_n * w).transpose();
    rows.row(t).segment(d * d, d * d) = w.transpose();
  }
  for (Index t = 0; t < center.dim(); ++t) {
    Vec lz = vectorize(algebra.left_mult(center.basis_vector(t)));
    rows.row(derivations.dim() + t).segment(0, d * d) = lz.transpose();
    rows.row(derivations.dim() + t).segment(d * d, d * d) = lz.transpose();
  }
  return Subspace::from_spanning_rows(2 * d * d, rows);
}

const char* to_string(SolutionPredicate predicate) {
  switch (predicate) {
    case SolutionPredicate::psi_two_sided_centralizer: return "psi_two_sided_centralizer";
    case SolutionPredicate::omega_two_sided_centralizer: return "omega_two_sided_centralizer";
    case SolutionPredicate::omega_two_sided_generalized: return "omega_two_sided_generalized";
    case SolutionPredicate::delta_is_derivation: return "delta_is_derivation";
    case SolutionPredicate::psi_matches_delta_formula: return "psi_matches_delta_formula";
    case SolutionPredicate::psi_equals_gamma_omega: return "psi_equals_gamma_omega";
  }
  return "unknown";
}

bool VerificationReport::all_pass() const {
  if (!identity_holds) return false;
  for (const PredicateOutcome& outcome : predicates)
    if (!outcome.pass) return false;
  return true;
}

Element evaluate_expression(const Expression& expr, const Algebra& algebra,
                            const Element& x,
                            const std::map<std::string, LinearMap>& maps,
                            const std::map<std::string, Element>& centrals) {
  const Index d = algebra.dim();
  unsigned max_exp = 0;
  for (const Term& term : expr.terms)
    for (const Factor& factor : term.factors) {
      if (const auto* p = std::get_if<PowerFactor>(&factor))
        max_exp = std::max(max_exp, p->exp);
      if (const auto* m = std::get_if<MapFactor>(&factor))
        max_exp = std::max(max_exp, m->exp);
    }
  std::vector<Vec> powers(max_exp + 1);
  powers[0] = algebra.unit();
  for (unsigned k = 1; k <= max_exp; ++k) powers[k] = algebra.multiply(powers[k - 1], x);

  Vec result = Vec::Zero(d);
  for (const Term& term : expr.terms) {
    if (term.coeff == 0) continue;
    Vec acc = algebra.unit();
    for (const Factor& factor : term.factors) {
      if (const auto* p = std::get_if<PowerFactor>(&factor)) {
        acc = algebra.multiply(acc, powers[p->exp]);
      } else if (const auto* m = std::get_if<MapFactor>(&factor)) {
        acc = algebra.multiply(acc, Vec(maps.at(m->map) * powers[m->exp]));
      } else {
        const auto& c = std::get<CentralFactor>(factor);
        acc = algebra.multiply(
            acc, c.symbol == "1" ? algebra.unit() : centrals.at(c.symbol));
      }
    }
    result += term.coeff * acc;
  }
  return result;
}

VerificationReport verify_solution(const SolutionSpace& solution,
                                   const NormalizedIdentity& identity,
                                   const Algebra& algebra, const Binding& binding,
                                   const std::vector<SolutionPredicate>& checks,
                                   const Subspace* predicted) {
  const Index d = algebra.dim();
  std::map<std::string, Element> central_values;
  for (const auto& [name, central] : binding.centrals)
    central_values[name] = central.value;
  const Element gamma = gamma_of(identity, algebra, binding);
  const unsigned n = identity.degree;

  std::vector<std::vector<LinearMap>> tuples = solution.decoded_basis;
  RationalSampler sampler(kVerifySeed);
  if (solution.space.dim() > 0) {
    for (int i = 0; i < kCombinationSamples; ++i) {
      Vec combined = Vec::Zero(solution.space.ambient_dim());
      for (Index b = 0; b < solution.space.dim(); ++b)
        combined += sampler.next() * solution.space.basis_vector(b);
      std::vector<LinearMap> tuple;
      for (std::size_t u = 0; u < solution.layout.symbols.size(); ++u)
        tuple.push_back(
            unvectorize(combined.segment(static_cast<Index>(u) * d * d, d * d), d, d));
      tuples.push_back(std::move(tuple));
    }
  }

  VerificationReport report;
  report.identity_holds = true;
  for (const auto& tuple : tuples) {
    std::map<std::string, LinearMap> maps = binding.fixed_maps;
    for (std::size_t u = 0; u < solution.layout.symbols.size(); ++u)
      maps[solution.layout.symbols[u]] = tuple[u];
    for (int trial = 0; trial < kPointwiseSamples && report.identity_holds; ++trial) {
      Vec x = sampler.next_vector(d);
      for (const Expression& difference : identity.differences)
        if (!is_zero(evaluate_expression(difference, algebra, x, maps, central_values))) {
          report.identity_holds = false;
          break;
        }
    }
  }

  for (SolutionPredicate predicate : checks) {
    bool pass = true;
    for (const auto& tuple : tuples) {
      if (tuple.empty()) break;
      const LinearMap& psi = tuple.front();
      const LinearMap& omega = tuple.back();
      switch (predicate) {
        case SolutionPredicate::psi_two_sided_centralizer:
          pass = classify_map(algebra, psi).two_sided_centralizer;
          break;
        case SolutionPredicate::omega_two_sided_centralizer:
          pass = classify_map(algebra, omega).two_sided_centralizer;
          break;
        case SolutionPredicate::omega_two_sided_generalized:
          pass = classify_map(algebra, omega).two_sided_generalized;
          break;
        case SolutionPredicate::delta_is_derivation: {
          LinearMap delta = omega - algebra.left_mult(omega * algebra.unit());
          pass = classify_map(algebra, delta).derivation;
          break;
        }
        case SolutionPredicate::psi_matches_delta_formula: {
          Vec omega_unit = omega * algebra.unit();
          LinearMap delta = omega - algebra.left_mult(omega_unit);
          LinearMap expected =
              Rational(1, static_cast<long>(n)) * delta + algebra.left_mult(omega_unit);
          pass = is_zero(Mat(psi - expected));
          break;
        }
        case SolutionPredicate::psi_equals_gamma_omega:
          pass = is_zero(Mat(psi - algebra.left_mult(gamma) * omega));
          break;
      }
      if (!pass) break;
    }
    report.predicates.push_back({predicate, pass});
  }

  if (predicted) report.comparison = subspace_compare(solution.space, *predicted);
  return report;
}

FixedCheckReport verify_fixed(const NormalizedIdentity& identity,
                              const Algebra& algebra, const Binding& binding) {
  for (const std::string& name : identity.map_symbols)
    if (!binding.fixed_maps.count(name))
      throw std::invalid_argument("verify_fixed requires every map fixed");
  CompiledSystem system = compile_constraints(identity, algebra, binding);

  FixedCheckReport report;
  report.holds = is_zero(system.constants);

  std::map<std::string, Element> central_values;
  for (const auto& [name, central] : binding.centrals)
    central_values[name] = central.value;
  const Index d = algebra.dim();
  auto violates = [&](const Vec& x) {
    for (const Expression& difference : identity.differences)
      if (!is_zero(evaluate_expression(difference, algebra, x, binding.fixed_maps,
                                       central_values)))
        return true;
    return false;
  };

  RationalSampler sampler(kVerifySeed);
  for (Index i = 0; i < d && !report.witness; ++i) {
    if (violates(unit_vec(d, i))) report.witness = unit_vec(d, i);
    for (Index j = i + 1; j < d && !report.witness; ++j) {
      Vec x = unit_vec(d, i) + unit_vec(d, j);
      if (violates(x)) report.witness = x;
    }
  }
  for (int trial = 0; trial < kPointwiseSamples && !report.witness; ++trial) {
    Vec x = sampler.next_vector(d);
    if (violates(x)) report.witness = x;
  }
  if (report.witness) report.holds = false;
  return report;
}

}  // namespace trifi
