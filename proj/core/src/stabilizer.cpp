#include "pairbundle/classify.hpp"

#include "pairbundle/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pb::detail {

namespace {

const cd kI{0.0, 1.0};

Mat2 diag(cd x, cd y) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = x;
  m(1, 1) = y;
  return m;
}

cd phase(double a) { return std::polar(1.0, a); }

// Backward-error zero test for entry (i, j) of P^T R^T B_in R P.
struct ZeroTest {
  const Frame& f;
  const ToleranceConfig& tol;

  double weight(const Mat2& P, int i, int j) const {
    const Mat2 T = f.R * P;
    return T.col(i).norm() * T.col(j).norm() * f.beta;
  }
  bool operator()(cd v, int i, int j, const Mat2& P = Mat2::Identity()) const {
    return std::abs(v) <= tol.rank_tol * weight(P, i, j);
  }
};

int input_rank(const Frame& f, const ToleranceConfig& tol) {
  const Takagi t = takagi(f.B_in);
  if (t.sigma[0] <= tol.rank_tol * f.beta) return 0;
  if (t.sigma[1] <= tol.rank_tol * t.sigma[0]) return 1;
  return 2;
}

StabilizerReduction done(BShape s, BundleParams p, cd c, const Mat2& P) {
  StabilizerReduction r;
  r.shape = s;
  r.params = std::move(p);
  r.c = c;
  r.P = P;
  return r;
}

StabilizerReduction reduce_zero(const SymMat2& B, const Frame& f, const ToleranceConfig& tol) {
  const int rank = input_rank(f, tol);
  if (rank == 0) return done(BShape::Zero, {}, 1.0, Mat2::Identity());
  const Takagi t = takagi(B);
  const double s2 = rank == 2 ? 1.0 / std::sqrt(t.sigma[1]) : 1.0;
  const Mat2 P = t.U.conjugate() * diag(1.0 / std::sqrt(t.sigma[0]), s2);
  return done(rank == 2 ? BShape::Rank2 : BShape::Rank1, {}, 1.0, P);
}

StabilizerReduction reduce_identity(const SymMat2& B, const Frame& f, const ToleranceConfig& tol) {
  const int rank = input_rank(f, tol);
  if (rank == 0) return done(BShape::Zero, {}, 1.0, Mat2::Identity());
  const Takagi t = takagi(B);
  Mat2 X;
  X << 0.0, 1.0, 1.0, 0.0;
  BundleParams p;
  if (rank == 1) {
    p.d = t.sigma[0];
    return done(BShape::Diag0D, p, 1.0, t.U.conjugate() * X);
  }
  if (t.sigma[0] - t.sigma[1] <= tol.eig_cluster_tol * t.sigma[0]) {
    p.d = 0.5 * (t.sigma[0] + t.sigma[1]);
    return done(BShape::Scalar, p, 1.0, t.U.conjugate());
  }
  p.a = t.sigma[1];
  p.d = t.sigma[0];
  return done(BShape::DiagAD, p, 1.0, t.U.conjugate() * X);
}

StabilizerReduction reduce_theta(const SymMat2& B, const ZeroTest& z) {
  const bool za = z(B.a, 0, 0), zb = z(B.b, 0, 1), zd = z(B.d, 1, 1);
  double p1 = 0.0, p2 = 0.0;
  BundleParams p;
  BShape s = BShape::Zero;
  if (!za && !zb && !zd) {
    s = BShape::FullHermitianLike;
    p1 = -0.5 * std::arg(B.a);
    p2 = -0.5 * std::arg(B.d);
    cd zs = phase(p1 + p2) * B.b;
    const double ang = std::arg(zs);
    if (ang < 0.0 || ang >= kPi) {
      p1 += kPi;
      zs = -zs;
    }
    p.a = std::abs(B.a);
    p.d = std::abs(B.d);
    p.zeta_star = zs;
  } else if (za && !zb && !zd) {
    s = BShape::OffDiagPlusD;
    p2 = -0.5 * std::arg(B.d);
    p1 = -std::arg(B.b) - p2;
    p.b = std::abs(B.b);
    p.d = std::abs(B.d);
  } else if (!za && !zb && zd) {
    s = BShape::OffDiagPlusA;
    p1 = -0.5 * std::arg(B.a);
    p2 = -std::arg(B.b) - p1;
    p.a = std::abs(B.a);
    p.b = std::abs(B.b);
  } else if (!za && zb && !zd) {
    s = BShape::DiagAD;
    p1 = -0.5 * std::arg(B.a);
    p2 = -0.5 * std::arg(B.d);
    p.a = std::abs(B.a);
    p.d = std::abs(B.d);
  } else if (za && !zb && zd) {
    s = BShape::AntiDiag;
    p1 = -std::arg(B.b);
    p.b = std::abs(B.b);
  } else if (!za && zb && zd) {
    s = BShape::DiagA0;
    p1 = -0.5 * std::arg(B.a);
    p.a = std::abs(B.a);
  } else if (za && zb && !zd) {
    s = BShape::Diag0D;
    p2 = -0.5 * std::arg(B.d);
    p.d = std::abs(B.d);
  }
  return done(s, p, 1.0, diag(phase(p1), phase(p2)));
}

StabilizerReduction reduce_tau(const SymMat2& B, const ZeroTest& z) {
  const bool za = z(B.a, 0, 0), zb = z(B.b, 0, 1), zd = z(B.d, 1, 1);
  double r = 1.0, two_alpha = 0.0;
  cd c = 1.0;
  BundleParams p;
  BShape s = BShape::Zero;
  // Pick c = -1 when it brings the phase into [0, pi).
  auto choose_c = [&](double phi0) {
    const double w = std::fmod(std::fmod(phi0, 2 * kPi) + 2 * kPi, 2 * kPi);
    if (w >= kPi) {
      c = -1.0;
      two_alpha += kPi;
    }
  };
  if (!zb) {
    two_alpha = -std::arg(B.b);
    p.b = std::abs(B.b);
    if (!za) {
      s = BShape::PhaseForm;
      choose_c(std::arg(B.a) + two_alpha);
      r = 1.0 / std::sqrt(std::abs(B.a));
      p.phi = std::arg(B.a) + two_alpha;
      p.zeta = std::abs(B.a) * phase(two_alpha) * B.d;
    } else if (!zd) {
      s = BShape::OffDiagPhase;
      choose_c(std::arg(B.d) + two_alpha);
      r = std::sqrt(std::abs(B.d));
      p.phi = std::arg(B.d) + two_alpha;
    } else {
      s = BShape::AntiDiag;
    }
  } else if (!za) {
    s = BShape::OneZeta;
    r = 1.0 / std::sqrt(std::abs(B.a));
    two_alpha = -std::arg(B.a);
    p.zeta = std::conj(B.a) * B.d;
  } else if (!zd) {
    s = BShape::Diag01;
    r = std::sqrt(std::abs(B.d));
    two_alpha = -std::arg(B.d);
  }
  const cd x = r * phase(0.5 * two_alpha);
  return done(s, p, c, diag(x, c / std::conj(x)));
}

StabilizerReduction reduce_jordan(const SymMat2& B, const ZeroTest& z) {
  const bool za = z(B.a, 0, 0), zb = z(B.b, 0, 1), zd = z(B.d, 1, 1);
  auto shear = [](cd x, double t) {
    Mat2 m;
    m << x, x * kI * t, 0.0, x;
    return m;
  };
  BundleParams p;
  if (!za) {
    const cd x2 = phase(-std::arg(B.a));
    const double t = -std::imag(x2 * B.b) / std::abs(B.a);
    const cd x = phase(-0.5 * std::arg(B.a));
    const Mat2 P = shear(x, t);
    const double beta = std::real(x2 * B.b);
    p.a = std::abs(B.a);
    p.zeta = x2 * (B.d + 2.0 * kI * t * B.b - t * t * B.a);
    if (z(beta, 0, 1, P)) return done(BShape::DiagAZeta, p, 1.0, P);
    p.beta = beta;
    return done(BShape::SymABetaZeta, p, 1.0, P);
  }
  if (!zb) {
    const cd x2 = phase(-std::arg(B.b));
    const double t = -std::imag(x2 * B.d) / (2.0 * std::abs(B.b));
    const Mat2 P = shear(phase(-0.5 * std::arg(B.b)), t);
    const double delta = std::real(x2 * B.d);
    p.b = std::abs(B.b);
    if (z(delta, 1, 1, P)) return done(BShape::AntiDiag, p, 1.0, P);
    p.delta = delta;
    return done(BShape::OffDiagDelta, p, 1.0, P);
  }
  if (!zd) {
    p.d = std::abs(B.d);
    return done(BShape::Diag0D, p, 1.0, shear(phase(-0.5 * std::arg(B.d)), 0.0));
  }
  return done(BShape::Zero, p, 1.0, Mat2::Identity());
}

StabilizerReduction reduce_nilpotent(const SymMat2& B, const ZeroTest& z) {
  const bool za = z(B.a, 0, 0), zb = z(B.b, 0, 1), zd = z(B.d, 1, 1);
  double r = 1.0, two_alpha = 0.0, gamma = 0.0;
  BundleParams p;
  BShape s = BShape::Zero;
  if (!zb && !zd) {
    gamma = std::arg(B.d) - std::arg(B.b);
    two_alpha = std::arg(B.d) - 2.0 * std::arg(B.b);
    r = std::sqrt(std::abs(B.d));
    p.b = std::abs(B.b);
    if (za) {
      s = BShape::OffDiagB1;
    } else {
      s = BShape::ZetaStarB1;
      p.zeta_star = B.a * B.d * phase(-2.0 * std::arg(B.b));
    }
  } else if (!zb) {
    if (!za) {
      s = BShape::OneB0;
      r = 1.0 / std::sqrt(std::abs(B.a));
      two_alpha = -std::arg(B.a);
      gamma = two_alpha + std::arg(B.b);
    } else {
      s = BShape::AntiDiag;
      gamma = std::arg(B.b);
    }
    p.b = std::abs(B.b);
  } else if (!za && !zd) {
    s = BShape::DiagA1;
    r = std::sqrt(std::abs(B.d));
    two_alpha = -std::arg(B.a);
    gamma = 0.5 * (std::arg(B.d) - std::arg(B.a));
    p.a = std::abs(B.a) * std::abs(B.d);
  } else if (!za) {
    s = BShape::Diag10;
    r = 1.0 / std::sqrt(std::abs(B.a));
    two_alpha = -std::arg(B.a);
  } else if (!zd) {
    s = BShape::Diag01;
    r = std::sqrt(std::abs(B.d));
    two_alpha = -std::arg(B.d);
  }
  const cd x = r * phase(0.5 * two_alpha);
  const cd c = phase(gamma);
  return done(s, p, c, diag(x, 1.0 / (c * std::conj(x))));
}

StabilizerReduction reduce_one_zero(const SymMat2& B, const ZeroTest& z) {
  const bool zb = z(B.b, 0, 1), zd = z(B.d, 1, 1);
  auto lower = [](cd x, cd u, cd v) {
    Mat2 m;
    m << x, 0.0, u, v;
    return m;
  };
  BundleParams p;
  if (!zd) {
    const cd v = 1.0 / std::sqrt(B.d);
    const cd ap = B.a - B.b * B.b / B.d;
    const Mat2 P0 = lower(1.0, -B.b / B.d, v);
    if (z(ap, 0, 0, P0)) return done(BShape::Diag01, p, 1.0, P0);
    const cd x = phase(-0.5 * std::arg(ap));
    p.a = std::abs(ap);
    return done(BShape::DiagA1, p, 1.0, lower(x, -B.b * x / B.d, v));
  }
  if (!zb) return done(BShape::Swap, p, 1.0, lower(1.0, -B.a / (2.0 * B.b), 1.0 / B.b));
  if (!z(B.a, 0, 0)) {
    p.a = std::abs(B.a);
    return done(BShape::DiagA0, p, 1.0, lower(phase(-0.5 * std::arg(B.a)), 0.0, 1.0));
  }
  return done(BShape::Zero, p, 1.0, Mat2::Identity());
}

// ---- one_plus_minus: A = diag(1, -1) ----

const Mat2& sigma3() {
  static const Mat2 S = diag(1.0, -1.0);
  return S;
}

const Mat2& qmat() {
  static const Mat2 Q = [] {
    Mat2 q;
    q << 1.0, 1.0, 1.0, -1.0;
    return Mat2(q / std::sqrt(2.0));
  }();
  return Q;
}

Mat2 xmat() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

cd sigma_form(const Vec2& u, const Vec2& v) { return u.dot(sigma3() * v); }

std::pair<cd, cd> eig2(const Mat2& C) {
  const cd tr = C.trace();
  const cd det = C.determinant();
  const cd disc = std::sqrt(tr * tr - 4.0 * det);
  const cd l1 = 0.5 * (tr + (std::real(std::conj(tr) * disc) >= 0 ? disc : -disc));
  const cd l2 = std::abs(l1) > 0 ? det / l1 : cd(0.0);
  return {l1, l2};
}

Mat2 eigvecs(const Mat2& C, cd l1, cd l2) {
  Mat2 V;
  for (int k = 0; k < 2; ++k) {
    const Mat2 N = C - (k == 0 ? l2 : l1) * Mat2::Identity();
    Vec2 v = N.col(0).norm() >= N.col(1).norm() ? Vec2(N.col(0)) : Vec2(N.col(1));
    V.col(k) = v / v.norm();
  }
  return V;
}

Mat2 zmat(const Mat2& B) { return sigma3() * B.conjugate() * sigma3() * B; }

cd opm_sign(const Mat2& P) {
  const Mat2 G = P.adjoint() * sigma3() * P;
  return (G - sigma3()).norm() <= (G + sigma3()).norm() ? 1.0 : -1.0;
}

StabilizerReduction opm_rank1(const SymMat2& Bs, const ToleranceConfig& tol) {
  const Takagi t = takagi(Bs);
  const Vec2 w = std::sqrt(t.sigma[0]) * t.U.col(0);
  const double q = std::real(sigma_form(w, w));
  if (std::abs(q) <= tol.rank_tol * w.squaredNorm()) {
    const Mat2 D = diag(phase(-std::arg(w(0))), phase(-std::arg(w(1))));
    const double rho = std::abs(w(0));
    const double r = -std::log(rho * std::sqrt(2.0));
    Mat2 H;
    H << std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r);
    const Mat2 M = H * D;
    return done(BShape::XDiag10, {}, 1.0, Mat2(M.transpose() * qmat()));
  }
  const Vec2 u = w / std::sqrt(std::abs(q));
  const Vec2 fv(std::conj(u(1)), std::conj(u(0)));
  Mat2 G, M;
  if (q < 0) {
    G.col(0) = fv;
    G.col(1) = u;
    M = G.inverse();
  } else {
    G.col(0) = u;
    G.col(1) = fv;
    M = xmat() * G.inverse();
  }
  const Mat2 P = M.transpose();
  BundleParams p;
  p.d = std::abs(q);
  return done(BShape::Diag0D, p, opm_sign(P), P);
}

Vec2 jmap(const Mat2& B, const Vec2& v) { return sigma3() * (B * v).conjugate(); }

Mat2 opm_scalar(const Mat2& B, double d) {
  std::vector<Vec2> fs;
  for (Vec2 w : {Vec2(1.0, 0.0), Vec2(0.0, 1.0), Vec2(kI, 0.0), Vec2(0.0, kI)}) {
    const Vec2 f = w + jmap(B, w) / d;
    if (f.norm() > 1e-6) fs.push_back(f);
  }
  double best = -1.0;
  Vec2 f1, f2;
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j) {
      Eigen::Matrix<double, 4, 2> R;
      R.col(0) << fs[i].real(), fs[i].imag();
      R.col(1) << fs[j].real(), fs[j].imag();
      Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(R);
      const double sc = svd.singularValues()(1) / svd.singularValues()(0);
      if (sc > best) {
        best = sc;
        f1 = fs[i];
        f2 = fs[j];
      }
    }
  Eigen::Matrix2d G;
  G << std::real(sigma_form(f1, f1)), std::real(sigma_form(f1, f2)), std::real(sigma_form(f2, f1)),
      std::real(sigma_form(f2, f2));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (G + G.transpose()));
  const auto& E = es.eigenvectors();
  const Vec2 hm = (E(0, 0) * f1 + E(1, 0) * f2) / std::sqrt(std::abs(es.eigenvalues()(0)));
  const Vec2 hp = (E(0, 1) * f1 + E(1, 1) * f2) / std::sqrt(std::abs(es.eigenvalues()(1)));
  Mat2 P;
  P.col(0) = hp;
  P.col(1) = kI * hm;
  return P;
}

std::pair<Mat2, cd> opm_anti(const Mat2& B, double b) {
  std::vector<Vec2> cands;
  if (std::abs(B(0, 0)) <= 1e-14 * B.norm()) {
    cands.emplace_back(1.0, 0.0);
  } else {
    const cd disc = std::sqrt(B(0, 1) * B(0, 1) - B(0, 0) * B(1, 1));
    for (double sg : {1.0, -1.0}) cands.emplace_back((-B(0, 1) + sg * disc) / B(0, 0), 1.0);
  }
  Vec2 v1 = cands[0];
  for (const auto& v : cands)
    if (std::abs(std::real(sigma_form(v, v))) / v.squaredNorm() >
        std::abs(std::real(sigma_form(v1, v1))) / v1.squaredNorm())
      v1 = v;
  const double s1 = std::real(sigma_form(v1, v1));
  v1 /= std::sqrt(std::abs(s1));
  Vec2 v2 = jmap(B, v1) / b;
  if (s1 > 0) v2 = -v2;
  Mat2 P;
  P.col(0) = v1;
  P.col(1) = v2;
  return {P, s1 > 0 ? 1.0 : -1.0};
}

Mat2 jordan_basis(const Mat2& Z, cd lam) {
  const Mat2 N = Z - lam * Mat2::Identity();
  Vec2 v2 = N.col(0).norm() > N.col(1).norm() ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
  Mat2 V;
  V.col(0) = N * v2;
  V.col(1) = v2;
  return V;
}

StabilizerReduction opm_rank2(const SymMat2& Bs, const ToleranceConfig& tol) {
  const Mat2 B = Bs.matrix();
  const Mat2 Z = zmat(B);
  const cd trZ = Z.trace();
  const double adet = std::abs(B.determinant());
  const double rho = std::real(trZ) / adet;
  BundleParams p;

  if (std::abs(rho - 2.0) <= tol.eig_cluster_tol) {
    const double res = (B.conjugate() * sigma3() * B - 0.5 * trZ * sigma3()).norm() / B.squaredNorm();
    if (res <= tol.unit_circle_tol) {
      p.d = std::sqrt(adet);
      const Mat2 P = opm_scalar(B, *p.d);
      return done(BShape::Scalar, p, opm_sign(P), P);
    }
    p.b = std::sqrt(adet);
    const Mat2 T = qmat() * representative({ALabel::OnePlusMinus, BShape::XOffDiagB1}, p).B.matrix() * qmat();
    const Mat2 Z0 = zmat(T);
    const cd lam = 0.5 * trZ;
    const Mat2 V = jordan_basis(Z, lam), W = jordan_basis(Z0, 0.5 * Z0.trace());
    const Mat2 M = V.transpose() * B * V, Tp = W.transpose() * T * W;
    cd pp, qq;
    if (std::abs(M(0, 0)) > 1e-9 * M.cwiseAbs().maxCoeff()) {
      const cd p2 = Tp(0, 0) / M(0, 0);
      pp = std::sqrt(p2);
      qq = (Tp(0, 1) - p2 * M(0, 1)) / (pp * M(0, 0));
    } else {
      const cd p2 = Tp(0, 1) / M(0, 1);
      pp = std::sqrt(p2);
      qq = (Tp(1, 1) - p2 * M(1, 1)) / (2.0 * pp * M(0, 1));
    }
    Mat2 K;
    K << pp, qq, 0.0, pp;
    const Mat2 P = V * K * W.inverse();
    return done(BShape::XOffDiagB1, p, opm_sign(P), Mat2(P * qmat()));
  }
  if (std::abs(rho + 2.0) <= tol.eig_cluster_tol) {
    p.b = std::sqrt(adet);
    const auto [P, c] = opm_anti(B, *p.b);
    return done(BShape::AntiDiag, p, c, P);
  }
  if (rho < -2.0) throw ClassificationError(2, "no one_plus_minus shape for normalized trace " + std::to_string(rho));

  BShape shape;
  Mat2 T;
  if (rho > 2.0) {
    const double mu = 2.0 / (rho + std::sqrt(rho * rho - 4.0));
    shape = BShape::DiagAD;
    p.a = std::sqrt(mu * adet);
    p.d = std::sqrt(adet / mu);
    T = diag(*p.a, *p.d);
  } else {
    shape = BShape::XOneXi;
    p.d = adet;
    p.theta = std::acos(std::clamp(0.5 * rho, -1.0, 1.0));
    T = qmat() * representative({ALabel::OnePlusMinus, shape}, p).B.matrix() * qmat();
  }
  const Mat2 Z0 = zmat(T);
  const auto [l1, l2] = eig2(Z);
  auto [k1, k2] = eig2(Z0);
  if (std::abs(k1 - l1) > std::abs(k1 - l2)) std::swap(k1, k2);
  const Mat2 V = eigvecs(Z, l1, l2), W = eigvecs(Z0, k1, k2);
  const Mat2 M = V.transpose() * B * V, Tp = W.transpose() * T * W;
  const cd d1 = std::sqrt(Tp(0, 0) / M(0, 0)), d2 = std::sqrt(Tp(1, 1) / M(1, 1));
  const Mat2 Wi = W.inverse();
  Mat2 P = V * diag(d1, d2) * Wi;
  const Mat2 Palt = V * diag(d1, -d2) * Wi;
  if ((Palt.transpose() * B * Palt - T).norm() < (P.transpose() * B * P - T).norm()) P = Palt;
  const cd c = opm_sign(P);
  if (shape == BShape::XOneXi) P = P * qmat();
  return done(shape, p, c, P);
}

StabilizerReduction reduce_opm(const SymMat2& B, const Frame& f, const ToleranceConfig& tol) {
  const int rank = input_rank(f, tol);
  if (rank == 0) return done(BShape::Zero, {}, 1.0, Mat2::Identity());
  return rank == 1 ? opm_rank1(B, tol) : opm_rank2(B, tol);
}

}  // namespace

StabilizerReduction reduce_once(ALabel a, const BundleParams& a_params, const SymMat2& B, const Frame& f,
                                const ToleranceConfig& tol) {
  const ZeroTest z{f, tol};
  StabilizerReduction r;
  switch (a) {
    case ALabel::Zero: r = reduce_zero(B, f, tol); break;
    case ALabel::Identity: r = reduce_identity(B, f, tol); break;
    case ALabel::OnePlusMinus: r = reduce_opm(B, f, tol); break;
    case ALabel::OneTheta: r = reduce_theta(B, z); break;
    case ALabel::TauForm: r = reduce_tau(B, z); break;
    case ALabel::JordanI: r = reduce_jordan(B, z); break;
    case ALabel::Nilpotent: r = reduce_nilpotent(B, z); break;
    case ALabel::OneZero: r = reduce_one_zero(B, z); break;
  }
  const BundleLabel label{a, r.shape};
  BundleParams full = r.params;
  full.tau = a_params.tau;
  if (a == ALabel::OneTheta) full.theta = a_params.theta;
  const Mat2 A0 = a_representative(a, full);
  const Mat2 target = representative(label, canonicalize_params(label, full)).A;
  r.membership = max_norm(Mat2(r.c * r.P.adjoint() * A0 * r.P - target));
  if (!(r.membership <= 1e-6 * std::max(1.0, r.P.squaredNorm())))
    throw ClassificationError(2, "stabilizer membership check failed for " + to_string(label));
  return r;
}

}  // namespace pb::detail
