#include "pairbundle/classify.hpp"

#include "pairbundle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pb {

void ToleranceConfig::validate() const {
  for (double v : {rank_tol, eig_cluster_tol, unit_circle_tol})
    if (!(v > 0.0 && v <= 1e-2)) throw ValidationError("tolerances must lie in (0, 1e-2]");
}

ToleranceConfig ToleranceConfig::scaled(double f) const {
  return {rank_tol * f, eig_cluster_tol * f, unit_circle_tol * f};
}

namespace detail {

namespace {

// Normalized real invariant t = T / |det A| with T = 2 Re(a11 conj a22) - |a12|^2 - |a21|^2.
double normalized_trace(const Mat2& A) {
  const double T = 2.0 * std::real(A(0, 0) * std::conj(A(1, 1))) - std::norm(A(0, 1)) - std::norm(A(1, 0));
  return T / std::abs(A.determinant());
}

// Eigenvector of a 2x2 matrix for eigenvalue lam, given the other eigenvalue.
Vec2 eigvec(const Mat2& C, cd other) {
  const Mat2 N = C - other * Mat2::Identity();
  Vec2 v = N.col(0).norm() >= N.col(1).norm() ? Vec2(N.col(0)) : Vec2(N.col(1));
  return v / v.norm();
}

std::pair<cd, cd> eig2(const Mat2& C) {
  const cd tr = C.trace();
  const cd det = C.determinant();
  const cd disc = std::sqrt(tr * tr - 4.0 * det);
  const cd l1 = 0.5 * (tr + (std::real(std::conj(tr) * disc) >= 0 ? disc : -disc));
  const cd l2 = std::abs(l1) > 0 ? det / l1 : cd(0.0);
  return {l1, l2};
}

GroupElement reduce_theta(const Mat2& A) {
  const Mat2 C = cosquare(A);
  const auto [l1, l2] = eig2(C);
  Mat2 V;
  V.col(0) = eigvec(C, l2);
  V.col(1) = eigvec(C, l1);
  Mat2 M = V.adjoint() * A * V;
  if (std::arg(M(1, 1) / M(0, 0)) < 0) {
    V.col(0).swap(V.col(1));
    M = V.adjoint() * A * V;
  }
  Mat2 D = Mat2::Zero();
  D(0, 0) = 1.0 / std::sqrt(std::abs(M(0, 0)));
  D(1, 1) = 1.0 / std::sqrt(std::abs(M(1, 1)));
  return {std::polar(1.0, -std::arg(M(0, 0))), V * D};
}

GroupElement reduce_tau(const Mat2& A) {
  const Mat2 C = cosquare(A);
  auto [l1, l2] = eig2(C);
  if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
  Mat2 V;
  V.col(0) = eigvec(C, l2);
  V.col(1) = eigvec(C, l1);
  Mat2 M = V.adjoint() * A * V;
  const double alpha = -0.5 * std::arg(M(1, 0) / M(0, 1));
  V.col(0) *= std::polar(1.0, alpha);
  M = V.adjoint() * A * V;
  const double s = 1.0 / std::sqrt(std::abs(M(0, 1)));
  return {std::polar(1.0, -std::arg(M(0, 1))), V * s};
}

GroupElement reduce_jordan(const Mat2& A) {
  const Mat2 C = cosquare(A);
  const cd lam = 0.5 * C.trace();
  const Mat2 N = C - lam * Mat2::Identity();
  const int k = N.col(0).norm() >= N.col(1).norm() ? 0 : 1;
  Mat2 V;
  V.col(0) = N.col(k);
  V.col(1) = Vec2::Zero();
  V(k, 1) = cd(0.0, 2.0) * lam;
  const Mat2 M = V.adjoint() * A * V;
  const cd m12 = M(0, 1);
  const double gamma = 1.0 / std::sqrt(std::abs(m12));
  const double eta = -0.5 * std::real(M(1, 1) / m12);
  Mat2 K;
  K << gamma, gamma * eta, 0.0, gamma;
  return {std::polar(1.0, -std::arg(m12)), V * K};
}

GroupElement reduce_hermitian(const Mat2& A, bool* definite) {
  const double w = std::arg(A.determinant());
  const cd c1 = std::polar(1.0, -0.5 * w);
  const cd c2 = c1 * cd(0.0, 1.0);
  const Mat2 H1 = c1 * A, H2 = c2 * A;
  const double r1 = (H1 - H1.adjoint()).norm(), r2 = (H2 - H2.adjoint()).norm();
  cd c = r1 <= r2 ? c1 : c2;
  HermEig he = hermitian_eig(c * A);
  *definite = he.values[0] * he.values[1] > 0;
  if (*definite && he.values[0] < 0) {
    c = -c;
    he = hermitian_eig(c * A);
  }
  Mat2 V = he.vectors;
  std::array<double, 2> h = he.values;
  if (!*definite) {
    // positive eigenvalue first so that the result is 1 + (-1)
    V.col(0).swap(V.col(1));
    std::swap(h[0], h[1]);
  }
  Mat2 D = Mat2::Zero();
  D(0, 0) = 1.0 / std::sqrt(std::abs(h[0]));
  D(1, 1) = 1.0 / std::sqrt(std::abs(h[1]));
  return {c, V * D};
}

}  // namespace

AResult classify_A_once(const Mat2& A, const ToleranceConfig& tol, double scale) {
  AResult r;
  const auto sv = singular_values(A);
  if (sv[0] <= tol.rank_tol * scale) {
    r.label = ALabel::Zero;
    return r;
  }
  if (sv[1] <= tol.rank_tol * sv[0]) {
    const RankOne t = dominant_triple(A);
    const cd overlap = t.u.dot(t.v);  // u^* v
    const double sin_angle = std::abs(orthogonal_complement(t.u).dot(t.v));
    const double rs = 1.0 / std::sqrt(t.s);
    if (sin_angle <= tol.unit_circle_tol) {
      r.label = ALabel::OneZero;
      Mat2 W;
      W.col(0) = t.u;
      W.col(1) = orthogonal_complement(t.u);
      Mat2 D = Mat2::Identity();
      D(0, 0) = rs;
      r.reducer = {std::polar(1.0, std::arg(overlap)), W * D};
    } else {
      r.label = ALabel::Nilpotent;
      Mat2 UV;
      UV.col(0) = t.u;
      UV.col(1) = t.v;
      const Mat2 M = rs * UV.inverse();
      r.reducer = {1.0, M.adjoint()};
    }
    return r;
  }

  const double t = normalized_trace(A);
  {
    const double w = std::arg(A.determinant());
    const cd c1 = std::polar(1.0, -0.5 * w);
    const Mat2 H1 = c1 * A, H2 = (c1 * cd(0.0, 1.0)) * A;
    const double h = std::min((H1 - H1.adjoint()).norm(), (H2 - H2.adjoint()).norm()) / A.norm();
    if (h <= tol.unit_circle_tol) {
      bool definite = false;
      r.reducer = reduce_hermitian(A, &definite);
      r.label = definite ? ALabel::Identity : ALabel::OnePlusMinus;
      return r;
    }
  }
  if (std::abs(t + 2.0) <= tol.eig_cluster_tol) {
    r.label = ALabel::JordanI;
    r.reducer = reduce_jordan(A);
  } else if (std::abs(t - 2.0) <= tol.eig_cluster_tol) {
    bool definite = false;
    r.reducer = reduce_hermitian(A, &definite);
    r.label = ALabel::Identity;
    r.forced_ambiguous = true;
  } else if (t > -2.0) {
    r.label = ALabel::OneTheta;
    r.params.theta = std::acos(std::clamp(0.5 * t, -1.0, 1.0));
    r.reducer = reduce_theta(A);
  } else {
    r.label = ALabel::TauForm;
    r.params.tau = 2.0 / (-t + std::sqrt(t * t - 4.0));
    r.reducer = reduce_tau(A);
  }
  return r;
}

Classification classify_once(const PairAB& x, const ToleranceConfig& tol, bool* forced_ambiguous) {
  const double scale = tolerance_scale(x);
  AResult ar;
  try {
    ar = classify_A_once(x.A, tol, scale);
  } catch (const std::exception& e) {
    throw ClassificationError(1, e.what());
  }
  if (forced_ambiguous) *forced_ambiguous = ar.forced_ambiguous;

  Frame f;
  f.R = ar.reducer.P;
  f.beta = scale;
  f.B_in = x.B;
  const SymMat2 Bt = SymMat2::from_matrix(f.R.transpose() * x.B.matrix() * f.R);
  StabilizerReduction sr;
  try {
    sr = reduce_once(ar.label, ar.params, Bt, f, tol);
  } catch (const ClassificationError&) {
    throw;
  } catch (const std::exception& e) {
    throw ClassificationError(2, e.what());
  }

  Classification out;
  out.label = {ar.label, sr.shape};
  BundleParams p = sr.params;
  p.theta = p.theta ? p.theta : ar.params.theta;
  p.tau = ar.params.tau;
  out.params = canonicalize_params(out.label, p);
  out.reducer = {ar.reducer.c * sr.c, ar.reducer.P * sr.P};
  const auto violations = validate_params(out.label, out.params);
  if (!violations.empty())
    throw ClassificationError(2, to_string(out.label) + ": " + violations.front());
  out.residual = pair_distance(apply_action(out.reducer, x), representative(out.label, out.params));
  return out;
}

}  // namespace detail

namespace {

template <class Key, class F>
auto with_windows(const ToleranceConfig& tol, F&& run, std::vector<Key>* keys) {
  auto lo = run(tol.scaled(0.1));
  auto mid = run(tol);
  auto hi = run(tol.scaled(10.0));
  keys->clear();
  keys->push_back(lo.first);
  keys->push_back(mid.first);
  keys->push_back(hi.first);
  return std::make_tuple(std::move(lo.second), std::move(mid.second), std::move(hi.second));
}

}  // namespace

AClassification classify_A(const Mat2& A, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(A, "A");
  const double scale = std::max(1.0, max_norm(A));
  std::vector<ALabel> keys;
  bool forced = false;
  auto [lo, mid, hi] = with_windows<ALabel>(
      tol,
      [&](const ToleranceConfig& t) {
        auto r = detail::classify_A_once(A, t, scale);
        forced = forced || r.forced_ambiguous;
        return std::make_pair(r.label, r);
      },
      &keys);
  if (keys[0] != keys[1] || keys[1] != keys[2] || forced) {
    std::vector<std::string> cands;
    for (ALabel k : std::set<ALabel>(keys.begin(), keys.end())) cands.push_back(to_string(k));
    if (forced && cands.size() == 1) cands.push_back(to_string(ALabel::OneTheta));
    throw AmbiguityError("ambiguous A classification", cands);
  }
  AClassification out;
  out.label = mid.label;
  out.params = mid.params;
  out.reducer = mid.reducer;
  out.residual = max_norm(Mat2(apply_psi1(mid.reducer, A) - a_representative(mid.label, mid.params)));
  return out;
}

BClassification classify_B(const SymMat2& B, const ToleranceConfig& tol) {
  tol.validate();
  require_finite(B, "B");
  const double scale = std::max(1.0, max_norm(B));
  auto run = [&](const ToleranceConfig& t) {
    const Takagi tk = takagi(B);
    BClassification r;
    Mat2 D = Mat2::Identity();
    if (tk.sigma[0] <= t.rank_tol * scale) {
      r.label = BLabel::Zero;
      r.reducer = Mat2::Identity();
      return std::make_pair(r.label, r);
    }
    D(0, 0) = 1.0 / std::sqrt(tk.sigma[0]);
    if (tk.sigma[1] <= t.rank_tol * tk.sigma[0]) {
      r.label = BLabel::Rank1;
    } else {
      r.label = BLabel::Rank2;
      D(1, 1) = 1.0 / std::sqrt(tk.sigma[1]);
    }
    r.reducer = tk.U.conjugate() * D;
    return std::make_pair(r.label, r);
  };
  std::vector<BLabel> keys;
  auto [lo, mid, hi] = with_windows<BLabel>(tol, run, &keys);
  if (keys[0] != keys[1] || keys[1] != keys[2]) {
    std::vector<std::string> cands;
    for (BLabel k : std::set<BLabel>(keys.begin(), keys.end())) cands.push_back(to_string(k));
    throw AmbiguityError("ambiguous B rank", cands);
  }
  const int r = b_rank(mid.label);
  const SymMat2 target = r == 0 ? SymMat2{} : r == 1 ? SymMat2{1.0, 0.0, 0.0} : SymMat2{1.0, 0.0, 1.0};
  mid.residual = max_norm(apply_psi2(mid.reducer, B) - target);
  return mid;
}

Classification classify_pair(const PairAB& x, const ToleranceConfig& tol) {
  tol.validate();
  validate(x);
  bool forced = false;
  std::vector<BundleLabel> keys;
  auto [lo, mid, hi] = with_windows<BundleLabel>(
      tol,
      [&](const ToleranceConfig& t) {
        bool f = false;
        auto c = detail::classify_once(x, t, &f);
        forced = forced || f;
        return std::make_pair(c.label, c);
      },
      &keys);
  const std::set<BundleLabel> distinct(keys.begin(), keys.end());
  if (distinct.size() == 1 && !forced) return mid;

  Classification* best = &mid;
  for (Classification* c : {&lo, &hi})
    if (table_dimension(c->label) < table_dimension(best->label)) best = c;
  Classification out = *best;
  out.ambiguous = true;
  for (const auto& k : distinct)
    if (!(k == out.label)) out.alternatives.push_back(k);
  if (forced && out.alternatives.empty()) out.alternatives.push_back({ALabel::OneTheta, BShape::Zero});
  return out;
}

StabilizerReduction stabilizer_reduce_B(ALabel a, const BundleParams& a_params, const SymMat2& B,
                                        const ToleranceConfig& tol) {
  tol.validate();
  require_finite(B, "B");
  detail::Frame f;
  f.beta = std::max(1.0, max_norm(B));
  f.B_in = B;
  return detail::reduce_once(a, a_params, B, f, tol);
}

}  // namespace pb
