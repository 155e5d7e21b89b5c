#include "trifi/cli.hpp"

#include "trifi/identity.hpp"
#include "trifi/json_io.hpp"
#include "trifi/proof.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trifi {
namespace {

struct LoadedAlgebra {
  Algebra algebra;  // the composite when triangular
  std::optional<TriangularAlgebra> tri;
  std::string source;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Index parse_size(const std::string& text) {
  std::size_t used = 0;
  const long value = std::stol(text, &used);
  if (used != text.size() || value <= 0)
    throw std::invalid_argument("expected a positive integer: " + text);
  return static_cast<Index>(value);
}

// Builtin names resolve without files; anything else is a JSON document,
// triangular when it carries the A/B/M components.
LoadedAlgebra load_algebra(const std::string& spec) {
  auto as_tri = [&spec](TriangularAlgebra t) {
    Algebra composite = t.algebra;
    return LoadedAlgebra{std::move(composite), std::move(t), spec};
  };
  if (spec == "T2") return as_tri(make_upper_triangular(2));
  if (spec == "T3") return as_tri(make_upper_triangular(3));
  if (spec == "T4") return as_tri(make_upper_triangular(4));
  if (spec == "M2") return LoadedAlgebra{make_full_matrix_algebra(2), {}, spec};
  if (spec == "TriM2x1") return as_tri(make_matrix_bimodule(2, 1));
  if (spec.rfind("upper:", 0) == 0)
    return as_tri(make_upper_triangular(parse_size(spec.substr(6))));
  if (spec.rfind("matrix:", 0) == 0)
    return LoadedAlgebra{make_full_matrix_algebra(parse_size(spec.substr(7))), {},
                         spec};
  if (spec.rfind("trimat:", 0) == 0) {
    const std::string body = spec.substr(7);
    const auto x = body.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("expected trimat:PxQ, got " + spec);
    return as_tri(make_matrix_bimodule(parse_size(body.substr(0, x)),
                                       parse_size(body.substr(x + 1))));
  }
  const Json j = read_json_file(spec);
  if (j.is_object() && j.contains("A")) return as_tri(triangular_from_json(j));
  return LoadedAlgebra{algebra_from_json(j), {}, spec};
}

const TriangularAlgebra& require_triangular(const LoadedAlgebra& loaded) {
  if (!loaded.tri)
    throw std::invalid_argument(loaded.source +
                                " is not a triangular algebra document");
  return *loaded.tri;
}

// "3" or "-1/2" scale the unit; "a,b,c" gives coordinates.
Element parse_element_arg(const std::string& text, const Algebra& algebra) {
  if (text.find(',') == std::string::npos)
    return Element(parse_rational(text) * algebra.unit());
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? comma : comma - start);
    coords.push_back(parse_rational(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<Index>(coords.size()) != algebra.dim())
    throw std::invalid_argument("element needs " + std::to_string(algebra.dim()) +
                                " coordinates, got " +
                                std::to_string(coords.size()));
  Vec v(algebra.dim());
  for (Index i = 0; i < algebra.dim(); ++i) v(i) = coords[static_cast<std::size_t>(i)];
  return v;
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto pos = text.find('=');
  if (pos == std::string::npos || pos == 0)
    throw std::invalid_argument("expected name=value, got " + text);
  return {text.substr(0, pos), text.substr(pos + 1)};
}

void apply_constraint(const std::string& text, Binding& binding) {
  static const std::regex unit_re(
      R"(^\s*([A-Za-z_]\w*)\s*\(\s*1\s*\)\s+in\s+Z\s*$)");
  static const std::regex tie_re(R"(^\s*([A-Za-z_]\w*)\s*=\s*([A-Za-z_]\w*)\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, unit_re)) {
    binding.unit_in_center.push_back(m[1]);
    return;
  }
  if (std::regex_match(text, m, tie_re)) {
    binding.ties.emplace_back(m[1], m[2]);
    return;
  }
  throw std::invalid_argument("unrecognized constraint \"" + text +
                              "\" (expected \"Name(1) in Z\" or \"Name = Name\")");
}

std::optional<SolutionPredicate> predicate_from_string(const std::string& name) {
  static constexpr SolutionPredicate all[] = {
      SolutionPredicate::psi_two_sided_centralizer,
      SolutionPredicate::omega_two_sided_centralizer,
      SolutionPredicate::omega_two_sided_generalized,
      SolutionPredicate::delta_is_derivation,
      SolutionPredicate::psi_matches_delta_formula,
      SolutionPredicate::psi_equals_gamma_omega,
  };
  for (const SolutionPredicate p : all)
    if (name == to_string(p)) return p;
  return std::nullopt;
}

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw std::invalid_argument("cannot write " + out_path);
  file << text;
}

// Validation hit by `algebra build`; triangular documents were already
// validated during assembly, so only the composite table is re-checked.
bool validate_loaded(const LoadedAlgebra& loaded, std::ostream& err) {
  const AlgebraValidation validation = validate_algebra(loaded.algebra);
  if (!validation.ok()) {
    err << "validation failed: " << validation.unit_failures.size()
        << " unit failures, " << validation.associativity_failures.size()
        << " associativity failures\n";
    return false;
  }
  if (loaded.tri) {
    const FaithfulReport faithful = check_faithful(
        loaded.tri->bimodule, loaded.tri->a_component, loaded.tri->b_component);
    if (!faithful.left || !faithful.right) {
      err << "validation failed: bimodule is not faithful\n";
      return false;
    }
  }
  return true;
}

int run_algebra_build(const std::string& algebra_spec, const std::string& out_path,
                      std::ostream& out, std::ostream& err) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const Json document = loaded.tri ? triangular_to_json(*loaded.tri)
                                   : algebra_to_json(loaded.algebra);
  emit(document, out_path, out);
  return validate_loaded(loaded, err) ? 0 : 1;
}

int run_algebra_info(const std::string& algebra_spec, const std::string& out_path,
                     std::ostream& out) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const Algebra& algebra = loaded.algebra;
  Json report;
  report["source"] = loaded.source;
  report["fingerprint"] = algebra_fingerprint(algebra);
  report["dim"] = algebra.dim();
  if (!algebra.labels().empty()) report["labels"] = algebra.labels();
  const AlgebraValidation validation = validate_algebra(algebra);
  report["valid"] = validation.ok();
  const Subspace center = algebra.center();
  report["center_dim"] = center.dim();
  Json center_basis = Json::array();
  for (Index i = 0; i < center.dim(); ++i)
    center_basis.push_back(vec_to_json(center.basis_vector(i)));
  report["center_basis"] = std::move(center_basis);
  report["condition_p"] = condition_p(algebra);
  report["derivation_dim"] = derivation_space(algebra).dim();
  report["jordan_derivation_dim"] = jordan_derivation_space(algebra).dim();
  report["commuting_jordan_dim"] = commuting_jordan_derivation_space(algebra).dim();
  bool consistent = validation.ok();
  if (loaded.tri) {
    const TriangularAlgebra& tri = *loaded.tri;
    Json block;
    block["dimA"] = tri.blocks.dimA;
    block["dimM"] = tri.blocks.dimM;
    block["dimB"] = tri.blocks.dimB;
    const FaithfulReport faithful =
        check_faithful(tri.bimodule, tri.a_component, tri.b_component);
    block["faithful_left"] = faithful.left;
    block["faithful_right"] = faithful.right;
    const Subspace by_formula = center_by_formula(tri);
    block["center_formula_dim"] = by_formula.dim();
    const bool match = by_formula == center;
    block["center_match"] = match;
    report["triangular"] = std::move(block);
    consistent = consistent && faithful.left && faithful.right && match;
  }
  emit(report, out_path, out);
  return consistent ? 0 : 1;
}

struct IdentityInputs {
  std::string text;
  std::string file;
  std::vector<std::string> centrals;
  std::vector<std::string> constraints;
};

std::string resolve_identity_text(const IdentityInputs& inputs) {
  if (inputs.text.empty() == inputs.file.empty())
    throw std::invalid_argument("provide exactly one of --text / --file");
  return inputs.text.empty() ? read_text_file(inputs.file) : inputs.text;
}

Binding make_binding(const IdentityInputs& inputs, const Algebra& algebra) {
  Binding binding;
  for (const std::string& entry : inputs.centrals) {
    const auto [name, value] = split_assignment(entry);
    binding.centrals[name] = CentralBinding{parse_element_arg(value, algebra), false};
  }
  for (const std::string& constraint : inputs.constraints)
    apply_constraint(constraint, binding);
  return binding;
}

// The element bound to "gamma"/"g", else a sole central binding, else 1.
Element prediction_gamma(const Binding& binding, const Algebra& algebra) {
  for (const char* name : {"gamma", "g"}) {
    const auto it = binding.centrals.find(name);
    if (it != binding.centrals.end()) return it->second.value;
  }
  if (binding.centrals.size() == 1) return binding.centrals.begin()->second.value;
  return algebra.unit();
}

int run_identity_solve(const std::string& algebra_spec, const IdentityInputs& inputs,
                       unsigned expected_n, const std::vector<std::string>& checks,
                       const std::string& predict, const std::string& out_path,
                       std::ostream& out) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const Algebra& algebra = loaded.algebra;
  const std::string text = resolve_identity_text(inputs);
  const NormalizedIdentity identity = validate_identity(parse_identity(text));
  if (expected_n != 0 && expected_n != identity.degree)
    throw std::invalid_argument(
        "identity degree is " + std::to_string(identity.degree) +
        ", expected " + std::to_string(expected_n));
  const Binding binding = make_binding(inputs, algebra);

  std::vector<SolutionPredicate> predicates;
  for (const std::string& name : checks) {
    const auto predicate = predicate_from_string(name);
    if (!predicate) throw std::invalid_argument("unknown predicate " + name);
    predicates.push_back(*predicate);
  }

  std::optional<Subspace> predicted;
  if (predict == "central-pairs")
    predicted = predicted_central_pairs(algebra, prediction_gamma(binding, algebra));
  else if (predict == "generalized")
    predicted = predicted_generalized_space(algebra, identity.degree);
  else if (!predict.empty())
    throw std::invalid_argument("unknown prediction " + predict);

  const SolutionSpace solution = solve_identity(identity, algebra, binding);
  const VerificationReport verification =
      verify_solution(solution, identity, algebra, binding, predicates,
                      predicted ? &*predicted : nullptr);

  std::optional<Vec> gamma;
  if (!binding.centrals.empty()) gamma = prediction_gamma(binding, algebra);
  const Json report = solve_report_to_json(
      pretty_print(identity.ast), algebra_fingerprint(algebra), identity.degree,
      gamma, inputs.constraints, solution, verification);
  emit(report, out_path, out);
  return verification.all_pass() ? 0 : 1;
}

int run_identity_verify(const std::string& algebra_spec,
                        const IdentityInputs& inputs,
                        const std::vector<std::string>& map_bindings,
                        const std::string& out_path, std::ostream& out) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const Algebra& algebra = loaded.algebra;
  const std::string text = resolve_identity_text(inputs);
  const NormalizedIdentity identity = validate_identity(parse_identity(text));
  Binding binding = make_binding(inputs, algebra);
  for (const std::string& entry : map_bindings) {
    const auto [name, path] = split_assignment(entry);
    binding.fixed_maps[name] = map_from_json(read_json_file(path));
  }
  const FixedCheckReport result = verify_fixed(identity, algebra, binding);
  Json report;
  report["identity"] = pretty_print(identity.ast);
  report["algebra_fingerprint"] = algebra_fingerprint(algebra);
  report["holds"] = result.holds;
  if (result.witness) report["witness"] = vec_to_json(*result.witness);
  emit(report, out_path, out);
  return result.holds ? 0 : 1;
}

int run_map_classify(const std::string& algebra_spec, const std::string& map_path,
                     const std::string& out_path, std::ostream& out) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const LinearMap f = map_from_json(read_json_file(map_path));
  if (f.rows() != loaded.algebra.dim())
    throw std::invalid_argument("map dimension does not match the algebra");
  Json report;
  report["algebra_fingerprint"] = algebra_fingerprint(loaded.algebra);
  report["classification"] = classification_to_json(classify_map(loaded.algebra, f));
  emit(report, out_path, out);
  return 0;
}

int run_replay(const std::string& tag_name, const std::string& algebra_spec,
               unsigned n, const std::string& gamma_text,
               const std::string& psi_path, const std::string& omega_path,
               const std::string& out_path, std::ostream& out) {
  const auto tag = theorem_from_string(tag_name);
  if (!tag) throw std::invalid_argument("unknown theorem tag " + tag_name);
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const TriangularAlgebra& tri = require_triangular(loaded);
  const Algebra& algebra = tri.algebra;
  const Element gamma = parse_element_arg(gamma_text, algebra);
  if (!algebra.is_central(gamma))
    throw std::invalid_argument("gamma must be central");
  if (!algebra.invert(gamma))
    throw std::invalid_argument("gamma must be invertible");

  const Index d = algebra.dim();
  LinearMap psi, omega;
  if (psi_path.empty() != omega_path.empty())
    throw std::invalid_argument("provide both --psi and --omega or neither");
  if (!psi_path.empty()) {
    psi = map_from_json(read_json_file(psi_path));
    omega = map_from_json(read_json_file(omega_path));
  } else {
    // The distinguished central-pair solution with c = 1.
    omega = Mat::Identity(d, d);
    const bool with_gamma =
        *tag == TheoremTag::thm21 || *tag == TheoremTag::cor22;
    psi = with_gamma ? algebra.left_mult(gamma) : Mat(Mat::Identity(d, d));
  }

  const ProofTrace trace = replay_theorem(*tag, tri, n, gamma, psi, omega);
  Json report = trace_to_json(trace, algebra_fingerprint(algebra));
  report["n"] = n;
  report["gamma"] = vec_to_json(gamma);
  emit(report, out_path, out);
  return trace.passed() ? 0 : 1;
}

int run_lemmas(const std::string& algebra_spec, const std::string& out_path,
               std::ostream& out) {
  const LoadedAlgebra loaded = load_algebra(algebra_spec);
  const TriangularAlgebra& tri = require_triangular(loaded);
  const LemmaReport lemmas = verify_background_lemmas(tri);
  Json report = lemma_report_to_json(lemmas);
  report["algebra_fingerprint"] = algebra_fingerprint(tri.algebra);
  emit(report, out_path, out);
  return lemmas.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact solver and proof replayer for centralizer-type functional "
               "identities on triangular algebras"};
  app.name("trifi");
  app.require_subcommand(1);

  enum class Action {
    none,
    algebra_build,
    algebra_info,
    identity_solve,
    identity_verify,
    map_classify,
    replay,
    lemmas,
  };
  Action action = Action::none;

  std::string algebra_spec;
  std::string out_path;
  IdentityInputs inputs;
  unsigned expected_n = 0;
  std::vector<std::string> checks;
  std::string predict;
  std::vector<std::string> map_bindings;
  std::string map_path;
  std::string tag_name;
  unsigned replay_n = 2;
  std::string gamma_text = "1";
  std::string psi_path;
  std::string omega_path;

  const std::string algebra_help =
      "Builtin name (T2, T3, T4, M2, TriM2x1, upper:K, matrix:K, trimat:PxQ) "
      "or a JSON document path";

  CLI::App* algebra_cmd = app.add_subcommand("algebra", "Build or inspect algebras");
  algebra_cmd->require_subcommand(1);
  CLI::App* build_cmd = algebra_cmd->add_subcommand(
      "build", "Emit an algebra document and validate it");
  build_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  build_cmd->add_option("--out", out_path, "Write the document here");
  build_cmd->callback([&] { action = Action::algebra_build; });

  CLI::App* info_cmd = algebra_cmd->add_subcommand(
      "info", "Centers (both descriptions), condition (P), faithfulness, "
              "derivation-space dimensions");
  info_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  info_cmd->add_option("--out", out_path, "Write the report here");
  info_cmd->callback([&] { action = Action::algebra_info; });

  CLI::App* identity_cmd =
      app.add_subcommand("identity", "Solve or verify functional identities");
  identity_cmd->require_subcommand(1);
  CLI::App* solve_cmd = identity_cmd->add_subcommand(
      "solve", "Solve an identity for its unknown maps");
  solve_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  solve_cmd->add_option("--text", inputs.text, "Identity text");
  solve_cmd->add_option("--file", inputs.file, "File holding the identity text");
  solve_cmd->add_option("--n", expected_n, "Expected identity degree (checked)");
  solve_cmd->add_option("--central", inputs.centrals,
                        "Bind a central symbol, e.g. g=1 or g=1,0,2");
  solve_cmd->add_option("--constrain", inputs.constraints,
                        "Side constraint: \"Name(1) in Z\" or \"Name = Name\"");
  solve_cmd->add_option("--check", checks,
                        "Predicate to verify on every solution tuple");
  solve_cmd->add_option("--predict", predict,
                        "Compare against a predicted space: central-pairs or "
                        "generalized");
  solve_cmd->add_option("--out", out_path, "Write the report here");
  solve_cmd->callback([&] { action = Action::identity_solve; });

  CLI::App* verify_cmd = identity_cmd->add_subcommand(
      "verify", "Check an identity for fully fixed maps");
  verify_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  verify_cmd->add_option("--text", inputs.text, "Identity text");
  verify_cmd->add_option("--file", inputs.file, "File holding the identity text");
  verify_cmd->add_option("--map", map_bindings,
                         "Bind a map symbol to a matrix document, e.g. Psi=f.json")
      ->required();
  verify_cmd->add_option("--central", inputs.centrals,
                         "Bind a central symbol, e.g. g=1");
  verify_cmd->add_option("--out", out_path, "Write the report here");
  verify_cmd->callback([&] { action = Action::identity_verify; });

  CLI::App* map_cmd = app.add_subcommand("map", "Classify linear maps");
  map_cmd->require_subcommand(1);
  CLI::App* classify_cmd =
      map_cmd->add_subcommand("classify", "Full predicate classification");
  classify_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  classify_cmd->add_option("--map", map_path, "Matrix document")->required();
  classify_cmd->add_option("--out", out_path, "Write the report here");
  classify_cmd->callback([&] { action = Action::map_classify; });

  CLI::App* replay_cmd = app.add_subcommand(
      "replay", "Re-derive a proof's equation chain for a concrete solution");
  replay_cmd
      ->add_option("tag", tag_name, "One of thm21, cor22, thm25, cor-final")
      ->required()
      ->check(CLI::IsMember({"thm21", "cor22", "thm25", "cor-final"}));
  replay_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  replay_cmd->add_option("--n", replay_n, "Identity degree (>= 2)")->required();
  replay_cmd->add_option("--gamma", gamma_text,
                         "Central invertible coefficient: scalar or coordinates");
  replay_cmd->add_option("--psi", psi_path, "Matrix document for the left map");
  replay_cmd->add_option("--omega", omega_path,
                         "Matrix document for the right map");
  replay_cmd->add_option("--out", out_path, "Write the trace here");
  replay_cmd->callback([&] { action = Action::replay; });

  CLI::App* lemmas_cmd = app.add_subcommand(
      "lemmas", "Verify the imported background lemmas on a triangular algebra");
  lemmas_cmd->add_option("--algebra", algebra_spec, algebra_help)->required();
  lemmas_cmd->add_option("--out", out_path, "Write the report here");
  lemmas_cmd->callback([&] { action = Action::lemmas; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    switch (action) {
      case Action::algebra_build:
        return run_algebra_build(algebra_spec, out_path, out, err);
      case Action::algebra_info:
        return run_algebra_info(algebra_spec, out_path, out);
      case Action::identity_solve:
        return run_identity_solve(algebra_spec, inputs, expected_n, checks,
                                  predict, out_path, out);
      case Action::identity_verify:
        return run_identity_verify(algebra_spec, inputs, map_bindings, out_path,
                                   out);
      case Action::map_classify:
        return run_map_classify(algebra_spec, map_path, out_path, out);
      case Action::replay:
        return run_replay(tag_name, algebra_spec, replay_n, gamma_text, psi_path,
                          omega_path, out_path, out);
      case Action::lemmas:
        return run_lemmas(algebra_spec, out_path, out);
      case Action::none:
        break;
    }
    err << "no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const IdentityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace trifi
