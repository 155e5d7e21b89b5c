#include "trifi/triangular.hpp"

#include <stdexcept>
#include <utility>

namespace trifi {
namespace {

bool shapes_ok(const Bimodule& m, const Algebra& a, const Algebra& b) {
  if (m.dimM <= 0) return false;
  if (static_cast<Index>(m.left_action.size()) != a.dim()) return false;
  if (static_cast<Index>(m.right_action.size()) != b.dim()) return false;
  for (const Mat& op : m.left_action)
    if (op.rows() != m.dimM || op.cols() != m.dimM) return false;
  for (const Mat& op : m.right_action)
    if (op.rows() != m.dimM || op.cols() != m.dimM) return false;
  return true;
}

Mat combine_actions(const std::vector<Mat>& actions, const Vec& coords, Index dimM) {
  Mat result = Mat::Zero(dimM, dimM);
  for (Index i = 0; i < coords.size(); ++i)
    if (coords(i) != 0) result += coords(i) * actions[i];
  return result;
}

}  // namespace

BimoduleValidation validate_bimodule(const Bimodule& m, const Algebra& a,
                                     const Algebra& b) {
  BimoduleValidation report;
  report.shapes_ok = shapes_ok(m, a, b);
  if (!report.shapes_ok) return report;

  report.left_unital =
      is_zero(Mat(combine_actions(m.left_action, a.unit(), m.dimM) -
                  Mat::Identity(m.dimM, m.dimM)));
  report.right_unital =
      is_zero(Mat(combine_actions(m.right_action, b.unit(), m.dimM) -
                  Mat::Identity(m.dimM, m.dimM)));

  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j) {
      // (e_i e_j) * m = e_i * (e_j * m)
      Mat lhs = combine_actions(m.left_action, a.structure()[i][j], m.dimM);
      if (!is_zero(Mat(lhs - m.left_action[i] * m.left_action[j])))
        report.left_associativity_failures.emplace_back(i, j);
    }
  for (Index i = 0; i < b.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j) {
      // m * (e_i e_j) = (m * e_i) * e_j
      Mat lhs = combine_actions(m.right_action, b.structure()[i][j], m.dimM);
      if (!is_zero(Mat(lhs - m.right_action[j] * m.right_action[i])))
        report.right_associativity_failures.emplace_back(i, j);
    }
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < b.dim(); ++j) {
      // (e_i^A * m) * e_j^B = e_i^A * (m * e_j^B)
      if (!is_zero(Mat(m.right_action[j] * m.left_action[i] -
                       m.left_action[i] * m.right_action[j])))
        report.compatibility_failures.emplace_back(i, j);
    }
  return report;
}

FaithfulReport check_faithful(const Bimodule& m, const Algebra& a, const Algebra& b) {
  FaithfulReport report;
  // a acts as sum_i a_i left_action[i]; stack all matrix entries as rows in a.
  Mat left_rows(m.dimM * m.dimM, a.dim());
  for (Index i = 0; i < a.dim(); ++i) left_rows.col(i) = vectorize(m.left_action[i]);
  report.left = nullspace(left_rows).dim() == 0;
  Mat right_rows(m.dimM * m.dimM, b.dim());
  for (Index j = 0; j < b.dim(); ++j) right_rows.col(j) = vectorize(m.right_action[j]);
  report.right = nullspace(right_rows).dim() == 0;
  return report;
}

TriangularAlgebra build_triangular(const Algebra& a, const Algebra& b,
                                   const Bimodule& m,
                                   std::vector<std::string> labels) {
  if (m.dimM <= 0)
    throw std::invalid_argument("build_triangular: corner bimodule must be nonzero");
  if (!validate_algebra(a).ok())
    throw std::invalid_argument("build_triangular: first diagonal algebra is invalid");
  if (!validate_algebra(b).ok())
    throw std::invalid_argument("build_triangular: second diagonal algebra is invalid");
  if (!validate_bimodule(m, a, b).ok())
    throw std::invalid_argument("build_triangular: bimodule violates module axioms");

  BlockMap blocks{a.dim(), m.dimM, b.dim()};
  const Index d = blocks.dim();
  std::vector<std::vector<Vec>> structure(d, std::vector<Vec>(d, Vec::Zero(d)));

  for (Index i = 0; i < blocks.dimA; ++i)
    for (Index j = 0; j < blocks.dimA; ++j)
      structure[i][j].segment(0, blocks.dimA) = a.structure()[i][j];
  for (Index i = 0; i < blocks.dimA; ++i)
    for (Index t = 0; t < blocks.dimM; ++t)
      structure[i][blocks.m_offset() + t].segment(blocks.m_offset(), blocks.dimM) =
          m.left_action[i].col(t);
  for (Index t = 0; t < blocks.dimM; ++t)
    for (Index j = 0; j < blocks.dimB; ++j)
      structure[blocks.m_offset() + t][blocks.b_offset() + j].segment(
          blocks.m_offset(), blocks.dimM) = m.right_action[j].col(t);
  for (Index i = 0; i < blocks.dimB; ++i)
    for (Index j = 0; j < blocks.dimB; ++j)
      structure[blocks.b_offset() + i][blocks.b_offset() + j].segment(
          blocks.b_offset(), blocks.dimB) = b.structure()[i][j];

  Vec unit = Vec::Zero(d);
  unit.segment(0, blocks.dimA) = a.unit();
  unit.segment(blocks.b_offset(), blocks.dimB) = b.unit();

  if (labels.empty()) {
    labels.reserve(d);
    for (Index i = 0; i < blocks.dimA; ++i)
      labels.push_back(a.labels().empty() ? "a" + std::to_string(i)
                                          : "a:" + a.labels()[i]);
    for (Index t = 0; t < blocks.dimM; ++t) labels.push_back("m" + std::to_string(t));
    for (Index j = 0; j < blocks.dimB; ++j)
      labels.push_back(b.labels().empty() ? "b" + std::to_string(j)
                                          : "b:" + b.labels()[j]);
  }

  return TriangularAlgebra{Algebra(std::move(unit), std::move(structure), std::move(labels)),
                           blocks, a, b, m};
}

Subspace center_by_formula(const TriangularAlgebra& t) {
  const Algebra& a = t.a_component;
  const Algebra& b = t.b_component;
  const Bimodule& m = t.bimodule;
  const Index cols = a.dim() + b.dim();

  // Unknown (a, b); rows force a central, b central, and a*m = m*b on basis m.
  Mat rows = Mat::Zero(a.dim() * a.dim() + b.dim() * b.dim() + m.dimM * m.dimM, cols);
  Index at = 0;
  for (Index i = 0; i < a.dim(); ++i) {
    rows.block(at, 0, a.dim(), a.dim()) = a.basis_left(i) - a.basis_right(i);
    at += a.dim();
  }
  for (Index j = 0; j < b.dim(); ++j) {
    rows.block(at, a.dim(), b.dim(), b.dim()) = b.basis_left(j) - b.basis_right(j);
    at += b.dim();
  }
  for (Index c = 0; c < m.dimM; ++c) {
    for (Index i = 0; i < a.dim(); ++i)
      rows.block(at, i, m.dimM, 1) = m.left_action[i].col(c);
    for (Index j = 0; j < b.dim(); ++j)
      rows.block(at, a.dim() + j, m.dimM, 1) = -m.right_action[j].col(c);
    at += m.dimM;
  }

  Subspace pairs = nullspace(rows);
  Mat embedded = Mat::Zero(pairs.dim(), t.blocks.dim());
  for (Index r = 0; r < pairs.dim(); ++r) {
    embedded.block(r, 0, 1, a.dim()) = pairs.basis().row(r).segment(0, a.dim());
    embedded.block(r, t.blocks.b_offset(), 1, b.dim()) =
        pairs.basis().row(r).segment(a.dim(), b.dim());
  }
  return Subspace::from_spanning_rows(t.blocks.dim(), embedded);
}

Algebra make_full_matrix_algebra(Index k) {
  if (k <= 0) throw std::invalid_argument("make_full_matrix_algebra: size must be positive");
  const Index d = k * k;
  std::vector<std::vector<Vec>> structure(d, std::vector<Vec>(d, Vec::Zero(d)));
  std::vector<std::string> labels(d);
  for (Index u = 0; u < k; ++u)
    for (Index v = 0; v < k; ++v)
      labels[u * k + v] = "e" + std::to_string(u + 1) + std::to_string(v + 1);
  for (Index u = 0; u < k; ++u)
    for (Index v = 0; v < k; ++v)
      for (Index w = 0; w < k; ++w)
        for (Index z = 0; z < k; ++z)
          if (v == w) structure[u * k + v][w * k + z](u * k + z) = 1;
  Vec unit = Vec::Zero(d);
  for (Index u = 0; u < k; ++u) unit(u * k + u) = 1;
  return Algebra(std::move(unit), std::move(structure), std::move(labels));
}

Algebra make_diagonal_algebra(Index k) {
  if (k <= 0) throw std::invalid_argument("make_diagonal_algebra: size must be positive");
  std::vector<std::vector<Vec>> structure(k, std::vector<Vec>(k, Vec::Zero(k)));
  std::vector<std::string> labels(k);
  for (Index i = 0; i < k; ++i) {
    structure[i][i](i) = 1;
    labels[i] = "d" + std::to_string(i + 1);
  }
  Vec unit = Vec::Ones(k);
  return Algebra(std::move(unit), std::move(structure), std::move(labels));
}

Algebra make_upper_triangular_algebra(Index k) {
  if (k <= 0)
    throw std::invalid_argument("make_upper_triangular_algebra: size must be positive");
  if (k == 1) return make_full_matrix_algebra(1);
  return make_upper_triangular(k).algebra;
}

TriangularAlgebra make_upper_triangular(Index k) {
  if (k < 2)
    throw std::invalid_argument("make_upper_triangular: size must be at least 2");
  Algebra scalars = make_full_matrix_algebra(1);
  Algebra inner = make_upper_triangular_algebra(k - 1);

  // Corner = row vectors Q^{1 x (k-1)}; basis t stands for the matrix unit
  // e_{1, t+2}. Right action of the inner basis unit e_{rc} (1-based within
  // the lower block): e_{1,t+2} * e_{r+1,c+1} = [t == r-1] e_{1,c+1}.
  Bimodule corner;
  corner.dimM = k - 1;
  corner.left_action = {Mat::Identity(k - 1, k - 1)};
  corner.right_action.reserve(inner.dim());
  for (Index r = 1; r <= k - 1; ++r)
    for (Index c = r; c <= k - 1; ++c) {
      Mat action = Mat::Zero(k - 1, k - 1);
      action(c - 1, r - 1) = 1;
      corner.right_action.push_back(std::move(action));
    }

  std::vector<std::string> labels;
  labels.reserve(k * (k + 1) / 2);
  for (Index r = 1; r <= k; ++r)
    for (Index c = r; c <= k; ++c)
      labels.push_back("e" + std::to_string(r) + std::to_string(c));
  return build_triangular(scalars, inner, corner, std::move(labels));
}

TriangularAlgebra make_matrix_bimodule(Index p, Index q) {
  if (p <= 0 || q <= 0)
    throw std::invalid_argument("make_matrix_bimodule: sizes must be positive");
  Algebra a = make_full_matrix_algebra(p);
  Algebra b = make_full_matrix_algebra(q);

  // Corner = Q^{p x q}, basis e_uv row-major (index u*q + v).
  Bimodule corner;
  corner.dimM = p * q;
  corner.left_action.assign(a.dim(), Mat::Zero(corner.dimM, corner.dimM));
  corner.right_action.assign(b.dim(), Mat::Zero(corner.dimM, corner.dimM));
  for (Index x = 0; x < p; ++x)
    for (Index y = 0; y < p; ++y)  // e_xy in M_p: e_xy * e_uv = [y == u] e_xv
      for (Index v = 0; v < q; ++v)
        corner.left_action[x * p + y](x * q + v, y * q + v) = 1;
  for (Index x = 0; x < q; ++x)
    for (Index y = 0; y < q; ++y)  // e_xy in M_q: e_uv * e_xy = [v == x] e_uy
      for (Index u = 0; u < p; ++u)
        corner.right_action[x * q + y](u * q + y, u * q + x) = 1;
  return build_triangular(a, b, corner);
}

Algebra change_basis(const Algebra& a, const Mat& p) {
  if (p.rows() != a.dim() || p.cols() != a.dim())
    throw std::invalid_argument("change_basis: shape mismatch");
  auto p_inv = inverse_matrix(p);
  if (!p_inv) throw std::invalid_argument("change_basis: singular matrix");
  const Index d = a.dim();
  std::vector<std::vector<Vec>> structure(d, std::vector<Vec>(d, Vec::Zero(d)));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      structure[i][j] = *p_inv * a.multiply(p.col(i), p.col(j));
  return Algebra(*p_inv * a.unit(), std::move(structure));
}

namespace {

Mat random_invertible(RationalSampler& sampler, Index d) {
  for (;;) {
    Mat p = sampler.next_matrix(d, d);
    if (determinant(p) != 0) return p;
  }
}

Bimodule transform_bimodule(const Bimodule& m, const Mat& pa, const Mat& pb,
                            const Mat& s) {
  auto s_inv = inverse_matrix(s);
  Bimodule out;
  out.dimM = m.dimM;
  out.left_action.reserve(m.left_action.size());
  for (Index i = 0; i < static_cast<Index>(m.left_action.size()); ++i) {
    Mat combined = combine_actions(m.left_action, pa.col(i), m.dimM);
    out.left_action.push_back(*s_inv * combined * s);
  }
  out.right_action.reserve(m.right_action.size());
  for (Index j = 0; j < static_cast<Index>(m.right_action.size()); ++j) {
    Mat combined = combine_actions(m.right_action, pb.col(j), m.dimM);
    out.right_action.push_back(*s_inv * combined * s);
  }
  return out;
}

// Diagonal algebra Q^p acting coordinatewise on Q^p, scalars on the right.
TriangularAlgebra diagonal_column_instance(Index p) {
  Algebra a = make_diagonal_algebra(p);
  Algebra b = make_full_matrix_algebra(1);
  Bimodule corner;
  corner.dimM = p;
  corner.left_action.reserve(p);
  for (Index i = 0; i < p; ++i) {
    Mat action = Mat::Zero(p, p);
    action(i, i) = 1;
    corner.left_action.push_back(std::move(action));
  }
  corner.right_action = {Mat::Identity(p, p)};
  return build_triangular(a, b, corner);
}

TriangularAlgebra row_diagonal_instance(Index q) {
  Algebra a = make_full_matrix_algebra(1);
  Algebra b = make_diagonal_algebra(q);
  Bimodule corner;
  corner.dimM = q;
  corner.left_action = {Mat::Identity(q, q)};
  corner.right_action.reserve(q);
  for (Index j = 0; j < q; ++j) {
    Mat action = Mat::Zero(q, q);
    action(j, j) = 1;
    corner.right_action.push_back(std::move(action));
  }
  return build_triangular(a, b, corner);
}

// T_2(Q) acting on columns Q^2, scalars on the right.
TriangularAlgebra column_t2_instance() {
  Algebra a = make_upper_triangular_algebra(2);
  Algebra b = make_full_matrix_algebra(1);
  Bimodule corner;
  corner.dimM = 2;
  Mat l0 = Mat::Zero(2, 2);  // e11: (x, y) -> (x, 0)
  l0(0, 0) = 1;
  Mat l1 = Mat::Zero(2, 2);  // e12: (x, y) -> (y, 0)
  l1(0, 1) = 1;
  Mat l2 = Mat::Zero(2, 2);  // e22: (x, y) -> (0, y)
  l2(1, 1) = 1;
  corner.left_action = {l0, l1, l2};
  corner.right_action = {Mat::Identity(2, 2)};
  return build_triangular(a, b, corner);
}

}  // namespace

TriangularAlgebra random_triangular(RationalSampler& sampler) {
  TriangularAlgebra base = [&] {
    switch (sampler.next_below(4)) {
      case 0:
        return make_matrix_bimodule(1 + static_cast<Index>(sampler.next_below(2)),
                                    1 + static_cast<Index>(sampler.next_below(2)));
      case 1:
        return diagonal_column_instance(1 + static_cast<Index>(sampler.next_below(4)));
      case 2:
        return row_diagonal_instance(1 + static_cast<Index>(sampler.next_below(4)));
      default:
        return column_t2_instance();
    }
  }();

  Mat pa = random_invertible(sampler, base.blocks.dimA);
  Mat pb = random_invertible(sampler, base.blocks.dimB);
  Mat s = random_invertible(sampler, base.blocks.dimM);
  Algebra a = change_basis(base.a_component, pa);
  Algebra b = change_basis(base.b_component, pb);
  Bimodule m = transform_bimodule(base.bimodule, pa, pb, s);
  return build_triangular(a, b, m);
}

}  // namespace trifi
