#include "pairbundle/core.hpp"

#include <algorithm>
#include <cmath>

namespace pb {

SymMat2 SymMat2::from_matrix(const Mat2& m) {
  return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1)};
}

Mat2 SymMat2::matrix() const {
  Mat2 m;
  m << a, b, b, d;
  return m;
}

SymMat2 operator+(const SymMat2& x, const SymMat2& y) { return {x.a + y.a, x.b + y.b, x.d + y.d}; }
SymMat2 operator-(const SymMat2& x, const SymMat2& y) { return {x.a - y.a, x.b - y.b, x.d - y.d}; }
SymMat2 operator*(cd s, const SymMat2& x) { return {s * x.a, s * x.b, s * x.d}; }

Mat2 make_mat2(cd m00, cd m01, cd m10, cd m11) {
  Mat2 m;
  m << m00, m01, m10, m11;
  require_finite(m, "matrix");
  return m;
}

static bool finite(cd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(const Mat2& m, const char* what) {
  for (int i = 0; i < 4; ++i)
    if (!finite(m(i))) throw ValidationError(std::string(what) + ": non-finite entry");
}

void require_finite(const SymMat2& m, const char* what) {
  if (!finite(m.a) || !finite(m.b) || !finite(m.d))
    throw ValidationError(std::string(what) + ": non-finite entry");
}

void validate(const GroupElement& g) {
  if (!finite(g.c)) throw ValidationError("group element: non-finite c");
  if (std::abs(std::abs(g.c) - 1.0) > 1e-12) throw ValidationError("group element: |c| must equal 1");
  require_finite(g.P, "group element P");
  if (!(std::abs(g.P.determinant()) > 1e-300)) throw ValidationError("group element: P is singular");
}

void validate(const PairAB& x) {
  require_finite(x.A, "A");
  require_finite(x.B, "B");
}

PairAB apply_action(const GroupElement& g, const PairAB& x) {
  validate(g);
  return {g.c * g.P.adjoint() * x.A * g.P, SymMat2::from_matrix(g.P.transpose() * x.B.matrix() * g.P)};
}

Mat2 apply_psi1(const GroupElement& g, const Mat2& A) {
  validate(g);
  return g.c * g.P.adjoint() * A * g.P;
}

SymMat2 apply_psi2(const Mat2& P, const SymMat2& B) {
  require_finite(P, "P");
  if (!(std::abs(P.determinant()) > 1e-300)) throw SingularError("apply_psi2: P is singular");
  return SymMat2::from_matrix(P.transpose() * B.matrix() * P);
}

double max_norm(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

double max_norm(const SymMat2& m) { return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.d)}); }

double max_norm(const PairAB& x) { return std::max(max_norm(x.A), max_norm(x.B)); }

double pair_distance(const PairAB& x, const PairAB& y) {
  return std::max(max_norm(Mat2(x.A - y.A)), max_norm(x.B - y.B));
}

Mat2 cosquare(const Mat2& A) {
  const cd det = A.determinant();
  const double scale = std::max(1e-300, A.squaredNorm());
  if (std::abs(det) <= 1e-14 * scale) throw SingularError("cosquare: A is singular");
  Mat2 adj;
  adj << A(1, 1), -A(0, 1), -A(1, 0), A(0, 0);
  return (adj.adjoint() / std::conj(det)) * A;
}

cd det_invariant_raw(const PairAB& x) {
  Eigen::Matrix4cd M;
  const Mat2 B = x.B.matrix();
  M.topLeftCorner<2, 2>() = x.A;
  M.topRightCorner<2, 2>() = B.conjugate();
  M.bottomLeftCorner<2, 2>() = B;
  M.bottomRightCorner<2, 2>() = x.A.conjugate();
  return M.determinant();
}

double det_invariant(const PairAB& x) { return det_invariant_raw(x).real(); }

std::string to_string(DetSign s) {
  switch (s) {
    case DetSign::Negative: return "negative";
    case DetSign::Zero: return "zero";
    case DetSign::Positive: return "positive";
  }
  return "zero";
}

DetSign det_sign(const PairAB& x, double tol) {
  Eigen::Matrix4cd M;
  const Mat2 B = x.B.matrix();
  M << x.A, B.conjugate(), B, x.A.conjugate();
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Eigen::Matrix4cd>(M).singularValues();
  if (sv(0) == 0.0 || sv(3) <= tol * sv(0)) return DetSign::Zero;
  return det_invariant(x) > 0 ? DetSign::Positive : DetSign::Negative;
}

GroupElement group_compose(const GroupElement& h, const GroupElement& g) {
  return {h.c * g.c, h.P * g.P};
}

GroupElement group_inverse(const GroupElement& g) {
  validate(g);
  return {std::conj(g.c), g.P.inverse()};
}

double tolerance_scale(const PairAB& x) { return std::max(1.0, max_norm(x)); }

}  // namespace pb
