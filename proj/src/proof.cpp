#include "trifi/proof.hpp"

#include "trifi/classify.hpp"
#include "trifi/constraint.hpp"
#include "trifi/identity.hpp"
#include "trifi/rng.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trifi {
namespace {

constexpr std::uint64_t kReplaySeed = 0x7265706c6179ULL;
constexpr int kRandomProbes = 50;
constexpr int kDecompositionProbes = 20;
constexpr int kRandomCentrals = 3;

using UnaryForm = std::function<Element(const Element&)>;
using BinaryForm = std::function<Element(const Element&, const Element&)>;

Rational int_pow(const Rational& base, unsigned e) {
  Rational out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

std::string power_text(unsigned e) {
  return e == 1 ? std::string("X") : "X^" + std::to_string(e);
}

// Number of degree-n basis multisets in dimension d: C(d + n - 1, n).
Index multiset_count(Index d, unsigned n) {
  unsigned long long num = 1;
  unsigned long long den = 1;
  for (unsigned i = 1; i <= n; ++i) {
    num *= static_cast<unsigned long long>(d) + n - i;
    den *= i;
  }
  return static_cast<Index>(num / den);
}

ProofStep check_flag(std::string label, bool pass, std::optional<Vec> witness = {}) {
  ProofStep step;
  step.label = std::move(label);
  step.instances_checked = 1;
  step.pass = pass;
  if (!pass) step.witness = std::move(witness);
  return step;
}

// Linear in x: vanishing on the basis decides the equation; random probes
// re-check the evaluation path.
ProofStep check_linear(std::string label, const Algebra& algebra,
                       const UnaryForm& form, RationalSampler& rng) {
  ProofStep step;
  step.label = std::move(label);
  const Index d = algebra.dim();
  for (Index i = 0; i < d && !step.witness; ++i) {
    ++step.instances_checked;
    if (!is_zero(form(unit_vec(d, i)))) step.witness = unit_vec(d, i);
  }
  for (int t = 0; t < kRandomProbes && !step.witness; ++t) {
    const Element x = rng.next_vector(d);
    ++step.instances_checked;
    if (!is_zero(form(x))) step.witness = x;
  }
  step.pass = !step.witness.has_value();
  return step;
}

// Quadratic in x: vanishing on the basis plus vanishing of the polarized
// differences on basis pairs decides the equation over Q.
ProofStep check_quadratic(std::string label, const Algebra& algebra,
                          const UnaryForm& form, RationalSampler& rng) {
  ProofStep step;
  step.label = std::move(label);
  const Index d = algebra.dim();
  std::vector<Element> at_basis(d);
  for (Index i = 0; i < d && !step.witness; ++i) {
    at_basis[i] = form(unit_vec(d, i));
    ++step.instances_checked;
    if (!is_zero(at_basis[i])) step.witness = unit_vec(d, i);
  }
  for (Index i = 0; i < d && !step.witness; ++i) {
    for (Index j = i + 1; j < d && !step.witness; ++j) {
      const Element x = Element(unit_vec(d, i) + unit_vec(d, j));
      ++step.instances_checked;
      if (!is_zero(Element(form(x) - at_basis[i] - at_basis[j]))) step.witness = x;
    }
  }
  for (int t = 0; t < kRandomProbes && !step.witness; ++t) {
    const Element x = rng.next_vector(d);
    ++step.instances_checked;
    if (!is_zero(form(x))) step.witness = x;
  }
  step.pass = !step.witness.has_value();
  return step;
}

// Bilinear in (x, y): basis pairs decide the equation.
ProofStep check_bilinear(std::string label, const Algebra& algebra,
                         const BinaryForm& form, RationalSampler& rng) {
  ProofStep step;
  step.label = std::move(label);
  const Index d = algebra.dim();
  auto stack = [d](const Element& x, const Element& y) {
    Vec w(2 * d);
    w << x, y;
    return w;
  };
  for (Index i = 0; i < d && !step.witness; ++i) {
    for (Index j = 0; j < d && !step.witness; ++j) {
      ++step.instances_checked;
      if (!is_zero(form(unit_vec(d, i), unit_vec(d, j))))
        step.witness = stack(unit_vec(d, i), unit_vec(d, j));
    }
  }
  for (int t = 0; t < kRandomProbes && !step.witness; ++t) {
    const Element x = rng.next_vector(d);
    const Element y = rng.next_vector(d);
    ++step.instances_checked;
    if (!is_zero(form(x, y))) step.witness = stack(x, y);
  }
  step.pass = !step.witness.has_value();
  return step;
}

// Exact equality of two maps; covers every x at once.
ProofStep check_matrix(std::string label, const Mat& lhs, const Mat& rhs) {
  ProofStep step;
  step.label = std::move(label);
  step.instances_checked = lhs.cols();
  step.pass = is_zero(Mat(lhs - rhs));
  if (!step.pass) {
    for (Index j = 0; j < lhs.cols(); ++j) {
      if (!is_zero(Vec(lhs.col(j) - rhs.col(j)))) {
        step.witness = unit_vec(lhs.cols(), j);
        break;
      }
    }
  }
  return step;
}

// The unit, the canonical center basis, and a few random central
// combinations; the proofs quantify over arbitrary central C.
std::vector<Element> central_pool(const Algebra& algebra, RationalSampler& rng) {
  std::vector<Element> pool;
  pool.push_back(algebra.unit());
  const Subspace z = algebra.center();
  for (Index i = 0; i < z.dim(); ++i) pool.push_back(z.basis_vector(i));
  for (int t = 0; t < kRandomCentrals; ++t) {
    Element c = Vec::Zero(algebra.dim());
    for (Index i = 0; i < z.dim(); ++i) c += Element(rng.next() * z.basis_vector(i));
    pool.push_back(c);
  }
  return pool;
}

// The grouped expansion of the base identity at X + C sums to zero.
ProofStep check_decomposition(std::string label, ComponentKind kind,
                              const Algebra& algebra, const LinearMap& psi,
                              const LinearMap& omega, const Element& gamma,
                              unsigned n, RationalSampler& rng) {
  ProofStep step;
  step.label = std::move(label);
  const Index d = algebra.dim();
  std::vector<Element> xs;
  for (Index i = 0; i < d; ++i) xs.push_back(unit_vec(d, i));
  for (int t = 0; t < kDecompositionProbes; ++t) xs.push_back(rng.next_vector(d));
  for (const Element& c : central_pool(algebra, rng)) {
    for (const Element& x : xs) {
      ++step.instances_checked;
      Element sum = Vec::Zero(d);
      for (unsigned k = 1; k < n; ++k)
        sum += component_value(kind, k, algebra, x, c, psi, omega, gamma, n);
      if (!is_zero(sum)) {
        step.witness = x;
        step.pass = false;
        return step;
      }
    }
  }
  step.pass = true;
  return step;
}

ProofStep recovery_step(ComponentKind kind, const Algebra& algebra,
                        const LinearMap& psi, const LinearMap& omega,
                        const Element& gamma, unsigned n, RationalSampler& rng) {
  const Index d = algebra.dim();
  const Element x0 = rng.next_vector(d);
  Element c0 = Vec::Zero(d);
  const Subspace z = algebra.center();
  for (Index i = 0; i < z.dim(); ++i) c0 += z.basis_vector(i);
  const VandermondeRecovery rec =
      recover_components(kind, algebra, x0, c0, psi, omega, gamma, n);
  ProofStep step;
  step.label = "vandermonde-recovery";
  step.instances_checked = static_cast<Index>(n - 1) * static_cast<Index>(n - 1);
  step.pass = rec.ok();
  if (!step.pass) step.witness = x0;
  return step;
}

}  // namespace

const char* to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::thm21: return "thm21";
    case TheoremTag::cor22: return "cor22";
    case TheoremTag::thm25: return "thm25";
    case TheoremTag::cor_final: return "cor-final";
  }
  return "?";
}

std::optional<TheoremTag> theorem_from_string(std::string_view name) {
  if (name == "thm21") return TheoremTag::thm21;
  if (name == "cor22") return TheoremTag::cor22;
  if (name == "thm25") return TheoremTag::thm25;
  if (name == "cor-final" || name == "cor_final") return TheoremTag::cor_final;
  return std::nullopt;
}

std::string identity_text(TheoremTag tag, unsigned n) {
  if (n < 2) throw std::invalid_argument("n must exceed 1");
  const std::string xn = power_text(n);
  const std::string xm = power_text(n - 1);
  switch (tag) {
    case TheoremTag::thm21:
      return "Psi(" + xn + ") = gamma*" + xm + "*Omega(X) = gamma*Omega(X)*" + xm;
    case TheoremTag::cor22:
      return "Psi(" + xn + ") = gamma*X*Omega(" + xm + ") = gamma*Omega(" + xm +
             ")*X";
    case TheoremTag::thm25:
      return "2*Psi(" + xn + ") = " + xm + "*Omega(X) + Omega(X)*" + xm;
    case TheoremTag::cor_final:
      return "2*Psi(" + xn + ") = " + xm + "*Psi(X) + Psi(X)*" + xm;
  }
  throw std::invalid_argument("unknown theorem tag");
}

Element component_value(ComponentKind kind, unsigned k, const Algebra& algebra,
                        const Element& x, const Element& c, const LinearMap& psi,
                        const LinearMap& omega, const Element& gamma, unsigned n) {
  if (n < 2) throw std::invalid_argument("n must exceed 1");
  if (k < 1 || k > n - 1)
    throw std::out_of_range("component index must lie in [1, n-1]");
  if (!algebra.is_central(c)) throw std::invalid_argument("C must be central");

  const Element xnk = algebra.power(x, n - k);
  const Element ck = algebra.power(c, k);
  const Element ck1 = algebra.power(c, k - 1);
  const Element lead = Element(psi * algebra.multiply(xnk, ck));

  switch (kind) {
    case ComponentKind::phi: {
      const Element t1 = algebra.multiply(
          gamma, algebra.multiply(
                     ck, algebra.multiply(algebra.power(x, n - k - 1),
                                          Element(omega * x))));
      const Element t2 = algebra.multiply(
          gamma, algebra.multiply(ck1, algebra.multiply(xnk, Element(omega * c))));
      return Element(binomial(n, k) * lead - binomial(n - 1, k) * t1 -
                     binomial(n - 1, k - 1) * t2);
    }
    case ComponentKind::theta: {
      const Element t1 = algebra.multiply(
          gamma, algebra.multiply(
                     x, Element(omega * algebra.multiply(
                                    ck, algebra.power(x, n - k - 1)))));
      const Element t2 = algebra.multiply(
          gamma,
          algebra.multiply(c, Element(omega * algebra.multiply(ck1, xnk))));
      return Element(binomial(n, k) * lead - binomial(n - 1, k) * t1 -
                     binomial(n - 1, k - 1) * t2);
    }
    case ComponentKind::lambda: {
      const Element oc = Element(omega * c);
      const Element ox = Element(omega * x);
      const Element xnk1 = algebra.power(x, n - 1 - k);
      const Element p1 = algebra.multiply(
          ck1, Element(algebra.multiply(xnk, oc) + algebra.multiply(oc, xnk)));
      const Element p2 = algebra.multiply(
          ck, Element(algebra.multiply(xnk1, ox) + algebra.multiply(ox, xnk1)));
      return Element(Rational(2) * binomial(n, k) * lead -
                     binomial(n - 1, k - 1) * p1 - binomial(n - 1, k) * p2);
    }
  }
  throw std::invalid_argument("unknown component kind");
}

Rational vandermonde_check(unsigned n) {
  if (n < 2) throw std::invalid_argument("n must exceed 1");
  const Index m = static_cast<Index>(n) - 1;
  Mat v(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c)
      v(r, c) = int_pow(Rational(r + 1), static_cast<unsigned>(c) + 1);
  const Rational det = determinant(v);
  if (det == 0) throw std::logic_error("substitution matrix is singular");
  return det;
}

VandermondeRecovery recover_components(ComponentKind kind, const Algebra& algebra,
                                       const Element& x, const Element& c,
                                       const LinearMap& psi, const LinearMap& omega,
                                       const Element& gamma, unsigned n) {
  VandermondeRecovery out;
  out.det = vandermonde_check(n);
  const Index m = static_cast<Index>(n) - 1;
  const Index d = algebra.dim();

  out.direct.reserve(m);
  for (unsigned k = 1; k < n; ++k)
    out.direct.push_back(component_value(kind, k, algebra, x, c, psi, omega, gamma, n));

  // Row j of the system is the grouped expansion at jC; each group scales
  // with j^k, which is what turns the substitutions into the power matrix.
  out.scaled_consistently = true;
  std::vector<Element> rhs;
  rhs.reserve(m);
  for (unsigned j = 1; j < n; ++j) {
    const Element jc = Element(Rational(j) * c);
    Element sum = Vec::Zero(d);
    for (unsigned k = 1; k < n; ++k) {
      const Element term =
          component_value(kind, k, algebra, x, jc, psi, omega, gamma, n);
      if (!is_zero(Element(term - int_pow(Rational(j), k) * out.direct[k - 1])))
        out.scaled_consistently = false;
      sum += term;
    }
    rhs.push_back(sum);
  }

  // Forward elimination with exact pivots, then back-substitution; the
  // unknowns are the group values, one algebra element each.
  Mat v(m, m);
  for (Index r = 0; r < m; ++r)
    for (Index col = 0; col < m; ++col)
      v(r, col) = int_pow(Rational(r + 1), static_cast<unsigned>(col) + 1);
  std::vector<Element> b = rhs;
  for (Index col = 0; col < m; ++col) {
    Index pivot = col;
    while (pivot < m && v(pivot, col) == 0) ++pivot;
    if (pivot == m) throw std::logic_error("substitution matrix is singular");
    if (pivot != col) {
      v.row(pivot).swap(v.row(col));
      std::swap(b[pivot], b[col]);
    }
    for (Index r = col + 1; r < m; ++r) {
      if (v(r, col) == 0) continue;
      const Rational f = v(r, col) / v(col, col);
      v.row(r) -= f * v.row(col);
      b[r] -= Element(f * b[col]);
    }
  }
  out.recovered.assign(m, Vec::Zero(d));
  for (Index r = m - 1; r >= 0; --r) {
    Element acc = b[r];
    for (Index col = r + 1; col < m; ++col)
      acc -= Element(v(r, col) * out.recovered[col]);
    out.recovered[r] = Element(acc / v(r, r));
  }

  out.recovered_zero = true;
  out.matches_direct = true;
  for (Index r = 0; r < m; ++r) {
    if (!is_zero(out.recovered[r])) out.recovered_zero = false;
    if (!is_zero(Element(out.recovered[r] - out.direct[r])))
      out.matches_direct = false;
  }
  return out;
}

bool ProofTrace::passed() const {
  if (aborted) return false;
  for (const ProofStep& step : steps)
    if (!step.pass) return false;
  return true;
}

ProofTrace replay_theorem(TheoremTag tag, const TriangularAlgebra& t, unsigned n,
                          const Element& gamma, const LinearMap& psi,
                          const LinearMap& omega) {
  const Algebra& algebra = t.algebra;
  const Index d = algebra.dim();
  if (n < 2) throw std::invalid_argument("n must exceed 1");
  if (psi.rows() != d || psi.cols() != d || omega.rows() != d || omega.cols() != d)
    throw std::invalid_argument("solution maps must match the algebra dimension");
  if (gamma.size() != d)
    throw std::invalid_argument("gamma must match the algebra dimension");

  ProofTrace trace;
  trace.theorem = tag;
  RationalSampler rng(kReplaySeed);

  const bool with_gamma = tag == TheoremTag::thm21 || tag == TheoremTag::cor22;

  const NormalizedIdentity identity =
      validate_identity(parse_identity(identity_text(tag, n)));
  Binding binding;
  binding.fixed_maps["Psi"] = psi;
  if (tag != TheoremTag::cor_final) binding.fixed_maps["Omega"] = omega;
  if (with_gamma) binding.centrals["gamma"] = CentralBinding{gamma, true};

  const FixedCheckReport base = verify_fixed(identity, algebra, binding);
  ProofStep base_step;
  base_step.label = "base-identity";
  base_step.instances_checked =
      multiset_count(d, n) * static_cast<Index>(identity.differences.size());
  base_step.pass = base.holds;
  base_step.witness = base.witness;
  trace.steps.push_back(std::move(base_step));
  if (!base.holds) {
    trace.aborted = true;
    return trace;
  }

  // The corollary on a single map reuses Psi in Omega's role.
  const LinearMap& omega_map = tag == TheoremTag::cor_final ? psi : omega;
  const Element omega_one = Element(omega_map * algebra.unit());
  const Mat l_omega_one = algebra.left_mult(omega_one);
  const LinearMap delta = Mat(omega_map - l_omega_one);
  const Rational nr(n);

  auto mul = [&algebra](const Element& u, const Element& v) {
    return algebra.multiply(u, v);
  };
  auto sq = [&algebra](const Element& v) { return algebra.power(v, 2); };
  auto app = [](const LinearMap& f, const Element& v) { return Element(f * v); };
  auto stack2 = [d](const Element& u, const Element& v) {
    Vec w(2 * d);
    w << u, v;
    return w;
  };

  // Standing hypothesis of all four statements.
  trace.steps.push_back(check_flag("unit-image-central",
                                   algebra.is_central(omega_one),
                                   std::optional<Vec>{omega_one}));

  switch (tag) {
    case TheoremTag::thm21: {
      trace.steps.push_back(check_decomposition(
          "eq(2.2)", ComponentKind::phi, algebra, psi, omega, gamma, n, rng));
      trace.steps.push_back(
          recovery_step(ComponentKind::phi, algebra, psi, omega, gamma, n, rng));
      trace.steps.push_back(check_linear(
          "eq(2.3)", algebra,
          [&](const Element& x) {
            return Element(app(psi, x) - mul(gamma, app(omega, x)) / nr -
                           Rational(n - 1) / nr * mul(gamma, mul(x, omega_one)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.4)", algebra,
          [&](const Element& x) {
            return Element(app(psi, sq(x)) - mul(gamma, app(omega, sq(x))) / nr -
                           Rational(n - 1) / nr *
                               mul(gamma, mul(sq(x), omega_one)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.5)", algebra,
          [&](const Element& x) {
            return Element(app(psi, sq(x)) -
                           Rational(2) / nr * mul(gamma, mul(x, app(omega, x))) -
                           Rational(n - 2) / nr *
                               mul(gamma, mul(sq(x), omega_one)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.6)", algebra,
          [&](const Element& x) {
            return Element(app(omega, sq(x)) - Rational(2) * mul(x, app(omega, x)) +
                           mul(omega_one, sq(x)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.7)", algebra,
          [&](const Element& x) {
            return Element(app(omega, sq(x)) - Rational(2) * mul(app(omega, x), x) +
                           mul(omega_one, sq(x)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.8)", algebra,
          [&](const Element& x) {
            return Element(mul(app(omega, x), x) - mul(x, app(omega, x)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "delta-jordan-derivation", algebra,
          [&](const Element& x) {
            return Element(app(delta, sq(x)) - mul(app(delta, x), x) -
                           mul(x, app(delta, x)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "delta-commuting", algebra,
          [&](const Element& x) {
            return Element(mul(app(delta, x), x) - mul(x, app(delta, x)));
          },
          rng));
      trace.steps.push_back(
          check_matrix("delta-zero", delta, Mat(Mat::Zero(d, d))));
      trace.steps.push_back(
          check_matrix("omega-left-multiplier", omega, l_omega_one));
      trace.steps.push_back(check_matrix(
          "psi-gamma-omega", psi, Mat(algebra.left_mult(gamma) * omega)));
      trace.steps.push_back(check_bilinear(
          "omega-two-sided-centralizer", algebra,
          [&](const Element& x, const Element& y) {
            const Element oxy = app(omega, mul(x, y));
            return Element(stack2(Element(oxy - mul(app(omega, x), y)),
                                  Element(oxy - mul(x, app(omega, y)))));
          },
          rng));
      trace.steps.push_back(check_bilinear(
          "psi-two-sided-centralizer", algebra,
          [&](const Element& x, const Element& y) {
            const Element pxy = app(psi, mul(x, y));
            return Element(stack2(Element(pxy - mul(app(psi, x), y)),
                                  Element(pxy - mul(x, app(psi, y)))));
          },
          rng));
      break;
    }
    case TheoremTag::cor22: {
      trace.steps.push_back(check_decomposition(
          "eq(2.10)", ComponentKind::theta, algebra, psi, omega, gamma, n, rng));
      trace.steps.push_back(
          recovery_step(ComponentKind::theta, algebra, psi, omega, gamma, n, rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.11)", algebra,
          [&](const Element& x) {
            return Element(nr * app(psi, sq(x)) -
                           Rational(2) * mul(gamma, mul(x, app(omega, x))) -
                           Rational(n - 2) * mul(gamma, app(omega, sq(x))));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.12)", algebra,
          [&](const Element& x) {
            return Element(nr * app(psi, sq(x)) -
                           Rational(2) * mul(gamma, mul(app(omega, x), x)) -
                           Rational(n - 2) * mul(gamma, app(omega, sq(x))));
          },
          rng));
      const Mat mu =
          Mat(nr * psi - Rational(n - 2) * Mat(algebra.left_mult(gamma) * omega));
      trace.steps.push_back(check_quadratic(
          "eq(2.13)", algebra,
          [&](const Element& x) {
            const Element mx2 = app(mu, sq(x));
            return Element(
                stack2(Element(mx2 - Rational(2) * mul(gamma, mul(x, app(omega, x)))),
                       Element(mx2 - Rational(2) * mul(gamma, mul(app(omega, x), x)))));
          },
          rng));
      trace.steps.push_back(check_matrix(
          "mu-two-gamma-omega", mu,
          Mat(Rational(2) * Mat(algebra.left_mult(gamma) * omega))));
      trace.steps.push_back(check_matrix(
          "psi-gamma-omega", psi, Mat(algebra.left_mult(gamma) * omega)));
      trace.steps.push_back(check_bilinear(
          "omega-two-sided-centralizer", algebra,
          [&](const Element& x, const Element& y) {
            const Element oxy = app(omega, mul(x, y));
            return Element(stack2(Element(oxy - mul(app(omega, x), y)),
                                  Element(oxy - mul(x, app(omega, y)))));
          },
          rng));
      trace.steps.push_back(check_bilinear(
          "psi-two-sided-centralizer", algebra,
          [&](const Element& x, const Element& y) {
            const Element pxy = app(psi, mul(x, y));
            return Element(stack2(Element(pxy - mul(app(psi, x), y)),
                                  Element(pxy - mul(x, app(psi, y)))));
          },
          rng));
      break;
    }
    case TheoremTag::thm25: {
      trace.steps.push_back(check_decomposition(
          "eq(2.15)", ComponentKind::lambda, algebra, psi, omega, gamma, n, rng));
      trace.steps.push_back(recovery_step(ComponentKind::lambda, algebra, psi,
                                          omega, gamma, n, rng));
      trace.steps.push_back(check_linear(
          "eq(2.16)", algebra,
          [&](const Element& x) {
            return Element(app(psi, x) - app(omega, x) / nr -
                           Rational(n - 1) / nr * mul(x, omega_one));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.17)", algebra,
          [&](const Element& x) {
            return Element(app(psi, sq(x)) - app(omega, sq(x)) / nr -
                           Rational(n - 1) / nr * mul(sq(x), omega_one));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "eq(2.18)", algebra,
          [&](const Element& x) {
            return Element(app(psi, sq(x)) - mul(x, app(omega, x)) / nr -
                           mul(app(omega, x), x) / nr -
                           Rational(n - 2) / nr * mul(sq(x), omega_one));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "omega-square-expansion", algebra,
          [&](const Element& x) {
            return Element(app(omega, sq(x)) - mul(x, app(omega, x)) -
                           mul(app(omega, x), x) + mul(omega_one, sq(x)));
          },
          rng));
      trace.steps.push_back(check_quadratic(
          "delta-jordan-derivation", algebra,
          [&](const Element& x) {
            return Element(app(delta, sq(x)) - mul(app(delta, x), x) -
                           mul(x, app(delta, x)));
          },
          rng));
      trace.steps.push_back(check_bilinear(
          "delta-derivation", algebra,
          [&](const Element& x, const Element& y) {
            return Element(app(delta, mul(x, y)) - mul(app(delta, x), y) -
                           mul(x, app(delta, y)));
          },
          rng));
      trace.steps.push_back(check_bilinear(
          "omega-generalized-expansions", algebra,
          [&](const Element& x, const Element& y) {
            const Element oxy = app(omega, mul(x, y));
            return Element(
                stack2(Element(oxy - mul(app(omega, x), y) - mul(x, app(delta, y))),
                       Element(oxy - mul(app(delta, x), y) - mul(x, app(omega, y)))));
          },
          rng));
      trace.steps.push_back(check_matrix("psi-delta-formula", psi,
                                         Mat(delta / nr + l_omega_one)));
      const Mat dpsi = Mat(delta / nr);
      trace.steps.push_back(check_bilinear(
          "psi-generalized-expansions", algebra,
          [&](const Element& x, const Element& y) {
            const Element pxy = app(psi, mul(x, y));
            return Element(
                stack2(Element(pxy - mul(app(psi, x), y) - mul(x, app(dpsi, y))),
                       Element(pxy - mul(app(dpsi, x), y) - mul(x, app(psi, y)))));
          },
          rng));
      break;
    }
    case TheoremTag::cor_final: {
      trace.steps.push_back(check_matrix("psi-equals-omega", psi, omega));
      trace.steps.push_back(check_matrix("psi-delta-formula", psi,
                                         Mat(delta / nr + l_omega_one)));
      trace.steps.push_back(
          check_matrix("delta-zero", delta, Mat(Mat::Zero(d, d))));
      trace.steps.push_back(
          check_matrix("psi-left-multiplier", psi, l_omega_one));
      trace.steps.push_back(check_bilinear(
          "psi-two-sided-centralizer", algebra,
          [&](const Element& x, const Element& y) {
            const Element pxy = app(psi, mul(x, y));
            return Element(stack2(Element(pxy - mul(app(psi, x), y)),
                                  Element(pxy - mul(x, app(psi, y)))));
          },
          rng));
      break;
    }
  }
  return trace;
}

LemmaReport verify_background_lemmas(const TriangularAlgebra& t) {
  LemmaReport report;
  const Subspace der = derivation_space(t.algebra);
  const Subspace jder = jordan_derivation_space(t.algebra);
  report.derivation_dim = der.dim();
  report.jordan_derivation_dim = jder.dim();
  report.jordan_equals_derivation = der == jder;
  report.commuting_jordan_trivial =
      commuting_jordan_derivation_space(t.algebra).dim() == 0;
  report.condition_p_holds = condition_p(t.algebra);
  return report;
}

}  // namespace trifi
