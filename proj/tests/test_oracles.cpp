// Independent reference computations checked against the library.

#include "helpers.hpp"

#include <pairbundle/classify.hpp>
#include <pairbundle/search.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <doctest.h>

#include <array>
#include <cmath>

using namespace pbt;

namespace {

using Mat4 = Eigen::Matrix4cd;

cd det3(const Mat4& M, int skip_row, int skip_col) {
  std::array<int, 3> r{}, c{};
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) r[k++] = i;
  for (int j = 0, k = 0; j < 4; ++j)
    if (j != skip_col) c[k++] = j;
  auto m = [&](int i, int j) { return M(r[i], c[j]); };
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

cd laplace_det(const PairAB& x) {
  Mat4 M;
  const Mat2 B = x.B.matrix();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      M(i, j) = x.A(i, j);
      M(i, j + 2) = std::conj(B(i, j));
      M(i + 2, j) = B(i, j);
      M(i + 2, j + 2) = std::conj(x.A(i, j));
    }
  cd s = 0.0;
  for (int j = 0; j < 4; ++j) s += (j % 2 ? -1.0 : 1.0) * M(0, j) * det3(M, 0, j);
  return s;
}

Eigen::VectorXd flat(const Mat2& A, const Mat2& B) {
  Eigen::VectorXd v(14);
  for (int k = 0; k < 4; ++k) {
    v(2 * k) = A(k / 2, k % 2).real();
    v(2 * k + 1) = A(k / 2, k % 2).imag();
  }
  const cd b[3] = {B(0, 0), B(0, 1), B(1, 1)};
  for (int k = 0; k < 3; ++k) {
    v(8 + 2 * k) = b[k].real();
    v(9 + 2 * k) = b[k].imag();
  }
  return v;
}

int numeric_rank(const Eigen::MatrixXd& M) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(1e-7);
  return static_cast<int>(qr.rank());
}

// Lie-algebra tangent vectors at a random point of the bundle: exact group directions
// plus Richardson-extrapolated parameter derivatives.
int tangent_rank(const BundleLabel& l, Rng& r, bool with_c = true, bool with_params = true) {
  const auto p0 = generic_params(l);
  const GroupElement g = random_group_element(r, 5.0);
  const PairAB x = apply_action(g, representative(l, p0));
  const Mat2 A = x.A, B = x.B.matrix();
  std::vector<Eigen::VectorXd> cols;
  for (int k = 0; k < 8; ++k) {
    Mat2 X = Mat2::Zero();
    X(k / 4, k % 2) = (k / 2) % 2 ? cd(0.0, 1.0) : cd(1.0);
    cols.push_back(flat(X.adjoint() * A + A * X, X.transpose() * B + B * X));
  }
  if (with_c) cols.push_back(flat(I * A, Mat2::Zero()));
  if (with_params) {
    const auto v0 = params_to_real(l, p0);
    for (std::size_t j = 0; j < v0.size(); ++j) {
      auto at = [&](double h) {
        auto v = v0;
        v[j] += h;
        const PairAB y = apply_action(g, representative(l, params_from_real(l, v)));
        return flat(y.A, y.B.matrix());
      };
      const double h = 1e-3;
      const Eigen::VectorXd d1 = (at(h) - at(-h)) / (2 * h), d2 = (at(h / 2) - at(-h / 2)) / h;
      cols.push_back((4 * d2 - d1) / 3);
    }
  }
  Eigen::MatrixXd M(14, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = cols[j];
  return numeric_rank(M);
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("cofactor expansion of the 4x4 determinant agrees") {
  Rng r = make_stream(1, "test/oracle/det", 0);
  for (int k = 0; k < 500; ++k) {
    const PairAB x = random_pair(r, 2.0);
    const cd want = laplace_det(x);
    CHECK(std::abs(det_invariant_raw(x) - want) <= 1e-11 * std::max(1.0, std::abs(want)));
    CHECK(std::abs(want.imag()) <= 1e-11 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("Lie-algebra tangent rank reproduces every tabulated dimension") {
  Rng r = make_stream(1, "test/oracle/tangent", 0);
  for (const auto& li : taxonomy()) {
    CAPTURE(li.name);
    CHECK(tangent_rank(li.label, r) == li.dim);
  }
}

TEST_CASE("A-only tangent ranks") {
  // 9 group directions less the stabilizer, plus the free parameter
  const int frozen[] = {0, 4, 5, 5, 8, 6, 8, 7};
  Rng r = make_stream(1, "test/oracle/psi1", 0);
  for (int k = 0; k < 8; ++k) {
    const auto a = static_cast<ALabel>(k);
    CAPTURE(to_string(a));
    CHECK(tangent_rank({a, BShape::Zero}, r) == frozen[k]);
    CHECK(a_bundle_dimension(a) == frozen[k]);
  }
}

TEST_CASE("orbit of the symmetric factor under congruence") {
  Rng r = make_stream(1, "test/oracle/psi2", 0);
  // real tangent rank 2 * complex orbit dimension
  CHECK(tangent_rank({ALabel::Zero, BShape::Rank1}, r, false, false) == 4);
  CHECK(tangent_rank({ALabel::Zero, BShape::Rank2}, r, false, false) == 6);
}

TEST_CASE("identity lies at max-norm distance one half from the rank-one orbit") {
  // |det(I - E)| >= (1 - e)^2 - e^2 > 0 whenever every |E_ij| <= e < 1/2
  const double frozen = 0.5;
  const Mat2 R = 0.5 * m2(1, 1, 1, 1);
  CHECK(max_norm(Mat2(Mat2::Identity() - R)) == frozen);
  Rng r = make_stream(1, "test/oracle/floor", 0);
  for (int k = 0; k < 20000; ++k) {
    const Vec2 u(random_in_disc(r, 2.0), random_in_disc(r, 2.0));
    const Mat2 S = u * u.transpose();
    CHECK(max_norm(Mat2(Mat2::Identity() - S)) >= frozen);
  }
  SearchOptions o;
  o.restarts = 16;
  const double found = distance_to_b_orbit({1.0, 0.0, 1.0}, BLabel::Rank1, o).upper_bound;
  CHECK(found >= frozen);
  CHECK(found <= frozen + 1e-6);
}

TEST_CASE("cosquare spectrum pins the tau and theta parameters") {
  Rng r = make_stream(1, "test/oracle/cosquare", 0);
  for (int k = 0; k < 200; ++k) {
    const bool tau_case = k % 2 == 0;
    BundleParams p;
    ALabel a;
    if (tau_case) {
      a = ALabel::TauForm;
      p.tau = uniform(r, 0.05, 0.95);
    } else {
      a = ALabel::OneTheta;
      p.theta = uniform(r, 0.05, kPi - 0.05);
    }
    const Mat2 A = apply_psi1(random_group_element(r, 10.0), a_representative(a, p));
    const Mat2 C = A.adjoint().inverse() * A;
    const Eigen::ComplexEigenSolver<Mat2> es(C);
    const cd l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
    const auto c = classify_A(A);
    REQUIRE(c.label == a);
    if (tau_case) {
      const double ratio = std::min(std::abs(l0 / l1), std::abs(l1 / l0));
      CHECK(*c.params.tau == doctest::Approx(std::sqrt(ratio)).epsilon(1e-7));
    } else {
      CHECK(std::cos(2 * *c.params.theta) == doctest::Approx((l1 / l0).real()).epsilon(1e-7));
      CHECK(std::abs(std::abs(l1 / l0) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("B rank from the singular values matches the label's rank range") {
  Rng r = make_stream(1, "test/oracle/brank", 0);
  for (int k = 0; k < 300; ++k) {
    PairAB x{random_polydisc(r, 1.0), {}};
    const int want = k % 3;
    if (want >= 1) {
      const Vec2 u(random_in_disc(r, 1.0), random_in_disc(r, 1.0));
      x.B = SymMat2::from_matrix(u * u.transpose());
    }
    if (want == 2) x.B = x.B + random_sym_polydisc(r, 1.0);
    const auto c = classify_pair(x);
    if (c.ambiguous) continue;
    const Eigen::JacobiSVD<Mat2> svd(x.B.matrix());
    const auto s = svd.singularValues();
    const int rank = (s(0) > 1e-12) + (s(1) > 1e-12 * std::max(1.0, s(0)));
    const auto& li = label_info(c.label);
    CHECK(li.rank.lo <= rank);
    CHECK(rank <= li.rank.hi);
  }
}

}  // TEST_SUITE
