#include "trifi/json_io.hpp"

#include "trifi/identity.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace trifi {
namespace {

Json optional_witness(const std::optional<Vec>& witness) {
  return witness ? vec_to_json(*witness) : Json(nullptr);
}

}  // namespace

Json rational_to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational string \"p\" or \"p/q\"");
}

Json vec_to_json(const Vec& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(rational_to_json(v(i)));
  return out;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  Vec v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const Json& entry : j) v(i++) = rational_from_json(entry);
  return v;
}

Json mat_to_json(const Mat& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.front().size());
  Mat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json algebra_to_json(const Algebra& a) {
  const Index d = a.dim();
  Json out;
  out["dim"] = d;
  out["unit"] = vec_to_json(a.unit());
  Json structure = Json::array();
  for (Index i = 0; i < d; ++i) {
    Json row = Json::array();
    for (Index j = 0; j < d; ++j) row.push_back(vec_to_json(a.structure()[i][j]));
    structure.push_back(std::move(row));
  }
  out["structure"] = std::move(structure);
  if (!a.labels().empty()) out["labels"] = a.labels();
  return out;
}

Algebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("algebra document must be an object");
  if (!j.contains("dim") || !j.contains("unit") || !j.contains("structure"))
    throw std::invalid_argument("algebra document needs dim, unit, structure");
  const Index d = j.at("dim").get<Index>();
  if (d <= 0) throw std::invalid_argument("dim must be positive");
  const Vec unit = vec_from_json(j.at("unit"));
  const Json& sj = j.at("structure");
  if (!sj.is_array() || static_cast<Index>(sj.size()) != d)
    throw std::invalid_argument("structure must have dim rows");
  std::vector<std::vector<Vec>> structure(d);
  for (Index i = 0; i < d; ++i) {
    const Json& row = sj[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      throw std::invalid_argument("structure must be dim x dim");
    structure[i].reserve(d);
    for (Index k = 0; k < d; ++k)
      structure[i].push_back(vec_from_json(row[static_cast<std::size_t>(k)]));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return Algebra(unit, std::move(structure), std::move(labels));
}

Json triangular_to_json(const TriangularAlgebra& t) {
  Json out;
  out["A"] = algebra_to_json(t.a_component);
  out["B"] = algebra_to_json(t.b_component);
  Json m;
  m["dimM"] = t.bimodule.dimM;
  Json left = Json::array();
  for (const Mat& action : t.bimodule.left_action) left.push_back(mat_to_json(action));
  Json right = Json::array();
  for (const Mat& action : t.bimodule.right_action) right.push_back(mat_to_json(action));
  m["left_action"] = std::move(left);
  m["right_action"] = std::move(right);
  out["M"] = std::move(m);
  if (!t.algebra.labels().empty()) out["labels"] = t.algebra.labels();
  return out;
}

TriangularAlgebra triangular_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B") || !j.contains("M"))
    throw std::invalid_argument("triangular document needs A, B, M");
  const Algebra a = algebra_from_json(j.at("A"));
  const Algebra b = algebra_from_json(j.at("B"));
  const Json& mj = j.at("M");
  if (!mj.is_object() || !mj.contains("dimM") || !mj.contains("left_action") ||
      !mj.contains("right_action"))
    throw std::invalid_argument("M needs dimM, left_action, right_action");
  Bimodule m;
  m.dimM = mj.at("dimM").get<Index>();
  for (const Json& action : mj.at("left_action"))
    m.left_action.push_back(mat_from_json(action));
  for (const Json& action : mj.at("right_action"))
    m.right_action.push_back(mat_from_json(action));
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  return build_triangular(a, b, m, std::move(labels));
}

Json map_to_json(const LinearMap& f) {
  Json out;
  out["matrix"] = mat_to_json(f);
  return out;
}

LinearMap map_from_json(const Json& j) {
  const Json& body = j.is_object() && j.contains("matrix") ? j.at("matrix") : j;
  const Mat m = mat_from_json(body);
  if (m.rows() != m.cols()) throw std::invalid_argument("map matrix must be square");
  return m;
}

std::string algebra_fingerprint(const Algebra& a) {
  Json canonical;
  canonical["dim"] = a.dim();
  canonical["unit"] = vec_to_json(a.unit());
  Json structure = Json::array();
  for (Index i = 0; i < a.dim(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.dim(); ++j) row.push_back(vec_to_json(a.structure()[i][j]));
    structure.push_back(std::move(row));
  }
  canonical["structure"] = std::move(structure);
  const std::string dump = canonical.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return hex;
}

Json classification_to_json(const ClassificationReport& report) {
  Json out;
  out["left_centralizer"] = report.left_centralizer;
  out["right_centralizer"] = report.right_centralizer;
  out["two_sided_centralizer"] = report.two_sided_centralizer;
  out["jordan_left"] = report.jordan_left;
  out["jordan_right"] = report.jordan_right;
  out["jordan_two_sided"] = report.jordan_two_sided;
  out["jordan_centralizer"] = report.jordan_centralizer;
  out["derivation"] = report.derivation;
  out["jordan_derivation"] = report.jordan_derivation;
  out["commuting"] = report.commuting;
  out["l_generalized"] = report.l_generalized;
  out["r_generalized"] = report.r_generalized;
  out["two_sided_generalized"] = report.two_sided_generalized;
  if (report.l_witness) out["l_witness"] = mat_to_json(*report.l_witness);
  if (report.r_witness) out["r_witness"] = mat_to_json(*report.r_witness);
  return out;
}

Json lemma_report_to_json(const LemmaReport& report) {
  Json out;
  out["derivation_dim"] = report.derivation_dim;
  out["jordan_derivation_dim"] = report.jordan_derivation_dim;
  out["jordan_equals_derivation"] = report.jordan_equals_derivation;
  out["commuting_jordan_trivial"] = report.commuting_jordan_trivial;
  out["condition_p"] = report.condition_p_holds;
  out["all_pass"] = report.all_pass();
  return out;
}

Json trace_to_json(const ProofTrace& trace, const std::string& fingerprint) {
  Json out;
  out["theorem"] = to_string(trace.theorem);
  out["algebra_fingerprint"] = fingerprint;
  out["aborted"] = trace.aborted;
  out["passed"] = trace.passed();
  Json steps = Json::array();
  for (const ProofStep& step : trace.steps) {
    Json s;
    s["label"] = step.label;
    s["instances_checked"] = step.instances_checked;
    s["pass"] = step.pass;
    if (step.witness) s["witness"] = optional_witness(step.witness);
    steps.push_back(std::move(s));
  }
  out["steps"] = std::move(steps);
  return out;
}

Json solve_report_to_json(const std::string& identity_text,
                          const std::string& fingerprint, unsigned n,
                          const std::optional<Vec>& gamma,
                          const std::vector<std::string>& side_constraints,
                          const SolutionSpace& solution,
                          const VerificationReport& verification) {
  Json out;
  out["identity"] = identity_text;
  out["algebra_fingerprint"] = fingerprint;
  out["n"] = n;
  out["gamma"] = gamma ? vec_to_json(*gamma) : Json(nullptr);
  out["side_constraints"] = side_constraints;
  out["dim"] = solution.space.dim();
  Json basis = Json::array();
  for (const std::vector<LinearMap>& tuple : solution.decoded_basis) {
    Json entry;
    for (std::size_t s = 0; s < solution.layout.symbols.size(); ++s)
      entry[solution.layout.symbols[s]] = mat_to_json(tuple[s]);
    basis.push_back(std::move(entry));
  }
  out["basis"] = std::move(basis);
  Json ver;
  ver["identity_holds"] = verification.identity_holds;
  Json predicates;
  for (const PredicateOutcome& outcome : verification.predicates)
    predicates[to_string(outcome.predicate)] = outcome.pass ? "pass" : "fail";
  ver["predicates"] = std::move(predicates);
  if (verification.comparison)
    ver["comparison"] = to_string(*verification.comparison);
  ver["all_pass"] = verification.all_pass();
  out["verification"] = std::move(ver);
  return out;
}

}  // namespace trifi
