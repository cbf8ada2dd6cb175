#include "pairbundle/linalg.hpp"

#include <cmath>

namespace pb {

Vec2 orthogonal_complement(const Vec2& u) {
  Vec2 w(-std::conj(u(1)), std::conj(u(0)));
  const double n = w.norm();
  return n > 0 ? Vec2(w / n) : Vec2(0.0, 1.0);
}

Takagi takagi(const SymMat2& B) {
  const Mat2 M = B.matrix();
  Eigen::Matrix4d K;
  K.topLeftCorner<2, 2>() = M.real();
  K.topRightCorner<2, 2>() = M.imag();
  K.bottomLeftCorner<2, 2>() = M.imag();
  K.bottomRightCorner<2, 2>() = -M.real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(K);

  Takagi t;
  const Eigen::Vector4d top = es.eigenvectors().col(3);
  Vec2 u1(cd(top(0), top(2)), cd(top(1), top(3)));
  u1 /= u1.norm();
  t.sigma[0] = std::max(0.0, es.eigenvalues()(3));

  Vec2 u2 = orthogonal_complement(u1);
  const cd mu = (M * u2.conjugate()).dot(u2);  // u2^* B conj(u2)
  const cd lam = std::conj(mu);
  if (std::abs(lam) > 0) u2 *= std::polar(1.0, std::arg(lam) / 2.0);
  t.sigma[1] = std::abs(lam);
  if (t.sigma[1] > t.sigma[0]) t.sigma[1] = t.sigma[0];
  t.U.col(0) = u1;
  t.U.col(1) = u2;
  return t;
}

std::array<double, 2> singular_values(const Mat2& M) {
  Eigen::JacobiSVD<Mat2> svd(M);
  const auto& s = svd.singularValues();
  return {s(0), s(1)};
}

RankOne dominant_triple(const Mat2& M) {
  Eigen::JacobiSVD<Mat2> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.singularValues()(0), svd.matrixU().col(0), svd.matrixV().col(0)};
}

HermEig hermitian_eig(const Mat2& H) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(Mat2(0.5 * (H + H.adjoint())));
  return {{es.eigenvalues()(0), es.eigenvalues()(1)}, es.eigenvectors()};
}

}  // namespace pb
