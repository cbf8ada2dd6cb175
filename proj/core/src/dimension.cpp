#include "pairbundle/dimension.hpp"

#include <Eigen/SVD>

#include <array>
#include <functional>

namespace pb {

namespace {

using Vec14 = Eigen::Matrix<double, 14, 1>;

Vec14 flatten(const PairAB& x) {
  const std::array<cd, 7> v{x.A(0, 0), x.A(0, 1), x.A(1, 0), x.A(1, 1), x.B.a, x.B.b, x.B.d};
  Vec14 r;
  for (int i = 0; i < 7; ++i) {
    r(i) = v[i].real();
    r(7 + i) = v[i].imag();
  }
  return r;
}

PairAB diff(const std::function<PairAB(double)>& f) {
  const PairAB p = f(kDiffStep), m = f(-kDiffStep);
  PairAB d;
  d.A = (p.A - m.A) / (2 * kDiffStep);
  d.B = (1.0 / (2 * kDiffStep)) * (p.B - m.B);
  return d;
}

// Tangent images of the 8 real directions of P and the phase of c.
std::vector<Vec14> group_directions(const PairAB& x0, bool with_c) {
  std::vector<Vec14> cols;
  for (int k = 0; k < 8; ++k) {
    Mat2 X = Mat2::Zero();
    X(k % 4 / 2, k % 2) = k < 4 ? cd(1.0) : cd(0.0, 1.0);
    cols.push_back(flatten(diff([&](double t) {
      GroupElement g;
      g.P = Mat2::Identity() + t * X;
      return apply_action(g, x0);
    })));
  }
  if (with_c) {
    cols.push_back(flatten(diff([&](double t) {
      GroupElement g;
      g.c = std::polar(1.0, t);
      return apply_action(g, x0);
    })));
  }
  return cols;
}

DimensionReport rank_of(const std::vector<Vec14>& cols, double cutoff) {
  DimensionReport r;
  if (cols.empty()) return r;
  Eigen::MatrixXd M(14, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = cols[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  r.singular_values.assign(s.data(), s.data() + s.size());
  if (s.size() == 0 || s(0) <= 0.0) return r;
  auto count = [&](double c) {
    int n = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > c * s(0)) ++n;
    return n;
  };
  r.rank = count(cutoff);
  r.rank_tight = count(cutoff / 10);
  r.rank_loose = count(cutoff * 10);
  return r;
}

}  // namespace

DimensionReport dimension_report(const BundleLabel& l, const BundleParams& p, double cutoff) {
  const PairAB x0 = representative(l, p);
  auto cols = group_directions(x0, true);
  const auto v0 = params_to_real(l, p);
  for (std::size_t j = 0; j < v0.size(); ++j) {
    cols.push_back(flatten(diff([&](double t) {
      auto v = v0;
      v[j] += t;
      return representative(l, params_from_real(l, v));
    })));
  }
  return rank_of(cols, cutoff);
}

int bundle_dimension_numeric(const BundleLabel& l, const BundleParams& p) {
  const auto r = dimension_report(l, p);
  if (!r.stable())
    throw InstabilityError("tangent rank of " + to_string(l) + " is unstable under cutoff perturbation");
  return r.rank;
}

DimensionReport psi2_orbit_report(BLabel b, double cutoff) {
  PairAB x0;
  if (b == BLabel::Rank1) x0.B = {1.0, 0.0, 0.0};
  if (b == BLabel::Rank2) x0.B = {1.0, 0.0, 1.0};
  auto r = rank_of(group_directions(x0, false), cutoff);
  r.rank /= 2;
  r.rank_tight /= 2;
  r.rank_loose /= 2;
  return r;
}

int psi2_orbit_dimension(BLabel b) {
  const auto r = psi2_orbit_report(b);
  if (!r.stable()) throw InstabilityError("orbit rank of " + to_string(b) + " is unstable");
  return r.rank;
}

int psi1_bundle_dimension_numeric(ALabel a) {
  const BundleLabel l{a, BShape::Zero};
  const auto p = generic_params(l);
  return bundle_dimension_numeric(l, p);
}

}  // namespace pb
