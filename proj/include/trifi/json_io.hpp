#pragma once

#include "trifi/algebra.hpp"
#include "trifi/classify.hpp"
#include "trifi/constraint.hpp"
#include "trifi/proof.hpp"
#include "trifi/triangular.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trifi {

// Insertion-ordered documents keep every report byte-for-byte deterministic.
using Json = nlohmann::ordered_json;

// Rationals travel as strings "p" or "p/q"; plain JSON integers are accepted
// on input for hand-written documents.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

// Row-major nested arrays.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

// Algebra document: {dim, unit, structure[i][j] = coordinates of e_i e_j,
// labels?}. Reading only checks shapes; run validate_algebra on the result.
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);

// Triangular document: {A, B, M: {dimM, left_action, right_action}, labels?}.
// Reading assembles the composite through build_triangular, so a defective
// document throws with the validation failure.
Json triangular_to_json(const TriangularAlgebra& t);
TriangularAlgebra triangular_from_json(const Json& j);

// Map document: {matrix} or a bare d x d array.
Json map_to_json(const LinearMap& f);
LinearMap map_from_json(const Json& j);

// FNV-1a over the canonical structural dump (dim, unit, structure; labels
// are presentation and excluded). 16 hex characters.
std::string algebra_fingerprint(const Algebra& a);

Json classification_to_json(const ClassificationReport& report);
Json lemma_report_to_json(const LemmaReport& report);
Json trace_to_json(const ProofTrace& trace, const std::string& fingerprint);
Json solve_report_to_json(const std::string& identity_text,
                          const std::string& fingerprint, unsigned n,
                          const std::optional<Vec>& gamma,
                          const std::vector<std::string>& side_constraints,
                          const SolutionSpace& solution,
                          const VerificationReport& verification);

}  // namespace trifi
