#include "helpers.hpp"

#include <pairbundle/core.hpp>
#include <pairbundle/linalg.hpp>
#include <pairbundle/rng.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace pbt;

TEST_SUITE("core") {

TEST_CASE("action on a worked example") {
  GroupElement g{I, m2(1, 1, 0, 1)};
  PairAB x{m2(1, 0, 0, 2), {0.0, 1.0, 0.0}};
  const PairAB y = apply_action(g, x);
  // c P^* A P with P = [[1,1],[0,1]]: [[1,1],[1,3]] scaled by i
  CHECK(max_norm(Mat2(y.A - I * m2(1, 1, 1, 3))) < 1e-15);
  // P^T B P with B = [[0,1],[1,0]]: [[0,1],[1,2]]
  CHECK(max_norm(y.B - SymMat2{0.0, 1.0, 2.0}) < 1e-15);
}

TEST_CASE("identity element acts trivially") {
  Rng r = make_stream(1, "test/core/id", 0);
  for (int k = 0; k < 50; ++k) {
    const PairAB x = random_pair(r);
    CHECK(pair_distance(apply_action(GroupElement::identity(), x), x) == 0.0);
  }
}

TEST_CASE("action is a right action under group_compose") {
  Rng r = make_stream(1, "test/core/compose", 0);
  for (int k = 0; k < 200; ++k) {
    const PairAB x = random_pair(r);
    const GroupElement g = random_group_element(r, 10.0), h = random_group_element(r, 10.0);
    const PairAB lhs = apply_action(g, apply_action(h, x));
    const PairAB rhs = apply_action(group_compose(h, g), x);
    CHECK(pair_distance(lhs, rhs) <= 1e-10 * tolerance_scale(lhs));
  }
}

TEST_CASE("inverse undoes the action") {
  Rng r = make_stream(1, "test/core/inverse", 0);
  for (int k = 0; k < 200; ++k) {
    const PairAB x = random_pair(r);
    const GroupElement g = random_group_element(r, 100.0);
    const PairAB back = apply_action(group_inverse(g), apply_action(g, x));
    CHECK(pair_distance(back, x) <= 1e-9);
  }
}

TEST_CASE("validation rejects bad inputs") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(make_mat2(nan, 0, 0, 1), ValidationError);
  CHECK_THROWS_AS(validate(GroupElement{2.0, Mat2::Identity()}), ValidationError);
  CHECK_THROWS_AS(validate(GroupElement{1.0, Mat2::Zero()}), ValidationError);
  CHECK_THROWS_AS(group_inverse(GroupElement{1.0, m2(1, 2, 2, 4)}), ValidationError);
  PairAB x;
  x.B.b = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate(x), ValidationError);
}

TEST_CASE("max norm") {
  CHECK(max_norm(m2(1, -3, I * 2.0, cd(3, 4))) == doctest::Approx(5.0));
  CHECK(max_norm(SymMat2{0.5, cd(0, -2), 1.0}) == doctest::Approx(2.0));
  const PairAB x{m2(1, 0, 0, 1), {0.0, 7.0, 0.0}};
  CHECK(max_norm(x) == doctest::Approx(7.0));
  CHECK(tolerance_scale(PairAB{}) == 1.0);
}

TEST_CASE("max norm is submultiplicative up to the factor 2") {
  Rng r = make_stream(1, "test/core/submult", 0);
  for (int k = 0; k < 2000; ++k) {
    const Mat2 X = random_polydisc(r, 3.0), Y = random_polydisc(r, 3.0);
    CHECK(max_norm(Mat2(X * Y)) <= 2.0 * max_norm(X) * max_norm(Y) * (1 + 1e-15));
  }
}

TEST_CASE("symmetric matrix helpers") {
  const SymMat2 s = SymMat2::from_matrix(m2(1, 2, 4, 5));
  CHECK(s == SymMat2{1.0, 3.0, 5.0});
  CHECK(s.matrix() == m2(1, 3, 3, 5));
  CHECK((s - s) == SymMat2{});
  CHECK((cd(2.0) * s) == (s + s));
}

TEST_CASE("cosquare of a worked example and similarity covariance") {
  // A = diag(1, i): A^{-*} A = diag(1, -1)
  const Mat2 C = cosquare(m2(1, 0, 0, I));
  CHECK(max_norm(Mat2(C - m2(1, 0, 0, -1))) < 1e-15);
  CHECK_THROWS_AS(cosquare(m2(1, 1, 1, 1)), SingularError);

  Rng r = make_stream(1, "test/core/cosquare", 0);
  for (int k = 0; k < 100; ++k) {
    const Mat2 A = random_invertible(r, 10.0);
    const Mat2 P = random_invertible(r, 10.0);
    // cosquare(P^* A P) = P^{-1} cosquare(A) P
    const Mat2 lhs = cosquare(Mat2(P.adjoint() * A * P));
    const Mat2 rhs = P.inverse() * cosquare(A) * P;
    CHECK(max_norm(Mat2(lhs - rhs)) <= 1e-8 * std::max(1.0, max_norm(rhs)));
  }
}

TEST_CASE("det invariant examples") {
  CHECK(det_invariant(PairAB{Mat2::Identity(), {}}) == doctest::Approx(1.0));
  CHECK(det_invariant(PairAB{Mat2::Zero(), {1.0, 0.0, 1.0}}) == doctest::Approx(1.0));
  CHECK(det_invariant(PairAB{}) == 0.0);
  Rng r = make_stream(1, "test/core/detreal", 0);
  for (int k = 0; k < 200; ++k) {
    const cd raw = det_invariant_raw(random_pair(r, 2.0));
    CHECK(std::abs(raw.imag()) <= 1e-12 * std::max(1.0, std::abs(raw)));
  }
}

TEST_CASE("det invariant transforms by |det P|^4 and ignores c") {
  Rng r = make_stream(1, "test/core/detlaw", 0);
  for (int k = 0; k < 500; ++k) {
    const PairAB x = random_pair(r);
    const GroupElement g = random_group_element(r, 10.0);
    const double want = std::pow(std::abs(g.P.determinant()), 4) * det_invariant(x);
    const double got = det_invariant(apply_action(g, x));
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("det invariant is unchanged under |det P| = 1") {
  Rng r = make_stream(1, "test/core/detunit", 0);
  for (int k = 0; k < 500; ++k) {
    const PairAB x = random_pair(r);
    GroupElement g = random_group_element(r, 10.0);
    g.P /= std::sqrt(std::abs(g.P.determinant()));
    const double d0 = det_invariant(x);
    CHECK(std::abs(det_invariant(apply_action(g, x)) - d0) <= 1e-9 * std::max(1.0, std::abs(d0)));
  }
}

TEST_CASE("det sign is invariant and detects singular pairs") {
  CHECK(det_sign(PairAB{Mat2::Identity(), {}}) == DetSign::Positive);
  CHECK(det_sign(PairAB{m2(1, 0, 0, 0), {}}) == DetSign::Zero);
  CHECK(det_sign(PairAB{}) == DetSign::Zero);
  CHECK(to_string(DetSign::Negative) == "negative");
  Rng r = make_stream(1, "test/core/detsign", 0);
  int negatives = 0;
  for (int k = 0; k < 300; ++k) {
    const PairAB x = random_pair(r);
    const DetSign s = det_sign(x);
    negatives += s == DetSign::Negative;
    CHECK(det_sign(apply_action(random_group_element(r, 10.0), x)) == s);
  }
  CHECK(negatives > 0);
}

TEST_CASE("linear algebra kernels") {
  const auto sv = singular_values(m2(3, 0, 0, -4));
  CHECK(sv[0] == doctest::Approx(4.0));
  CHECK(sv[1] == doctest::Approx(3.0));

  Rng r = make_stream(1, "test/core/takagi", 0);
  for (int k = 0; k < 100; ++k) {
    const SymMat2 B = random_sym_polydisc(r, 2.0);
    const Takagi t = takagi(B);
    CHECK(t.sigma[0] >= t.sigma[1]);
    Mat2 S = Mat2::Zero();
    S(0, 0) = t.sigma[0];
    S(1, 1) = t.sigma[1];
    CHECK(max_norm(Mat2(t.U * S * t.U.transpose() - B.matrix())) < 1e-12);
    CHECK(max_norm(Mat2(t.U.adjoint() * t.U - Mat2::Identity())) < 1e-12);
  }

  const HermEig he = hermitian_eig(m2(2, I, -I, 2));
  CHECK(he.values[0] == doctest::Approx(1.0));
  CHECK(he.values[1] == doctest::Approx(3.0));

  const Vec2 u = Vec2(1.0, I) / std::sqrt(2.0);
  CHECK(std::abs(u.dot(orthogonal_complement(u))) < 1e-15);
}

TEST_CASE("streams are deterministic and distinct") {
  CHECK(stream_seed(7, "a", 0) == stream_seed(7, "a", 0));
  CHECK(stream_seed(7, "a", 0) != stream_seed(7, "a", 1));
  CHECK(stream_seed(7, "a", 0) != stream_seed(7, "b", 0));
  CHECK(stream_seed(7, "a", 0) != stream_seed(8, "a", 0));
  Rng r1 = make_stream(3, "x", 2), r2 = make_stream(3, "x", 2);
  for (int k = 0; k < 10; ++k) CHECK(r1() == r2());
}

TEST_CASE("random samplers respect their ranges") {
  Rng r = make_stream(1, "test/core/samplers", 0);
  for (int k = 0; k < 500; ++k) {
    CHECK(std::abs(random_in_disc(r, 0.3)) <= 0.3);
    CHECK(max_norm(random_polydisc(r, 0.2)) <= 0.2);
    const Mat2 U = random_unitary(r);
    CHECK(max_norm(Mat2(U.adjoint() * U - Mat2::Identity())) < 1e-12);
    const auto sv = singular_values(random_invertible(r, 50.0));
    CHECK(sv[0] / sv[1] <= 50.0 * (1 + 1e-9));
  }
}

}  // TEST_SUITE
