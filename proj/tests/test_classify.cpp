#include "helpers.hpp"

#include <pairbundle/classify.hpp>

#include <doctest.h>

#include <cmath>

using namespace pbt;

namespace {

PairAB theta_pair(double t) { return {m2(1, 0, 0, std::polar(1.0, t)), {}}; }

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("worked example: identity with diag(1, 3)") {
  const auto c = classify_pair({Mat2::Identity(), {1.0, 0.0, 3.0}});
  CHECK(to_string(c.label) == "identity/diag_ad");
  CHECK(*c.params.a == doctest::Approx(1.0));
  CHECK(*c.params.d == doctest::Approx(3.0));
  CHECK_FALSE(c.ambiguous);
  CHECK(c.residual < 1e-12);
}

TEST_CASE("zero pair") {
  const auto c = classify_pair(PairAB{});
  CHECK(to_string(c.label) == "zero/zero");
  CHECK(c.residual == 0.0);
}

TEST_CASE("every representative classifies to itself") {
  for (const auto& li : taxonomy()) {
    const auto p = generic_params(li.label);
    const auto c = classify_pair(representative(li.label, p));
    CAPTURE(li.name);
    CHECK(c.label == li.label);
    CHECK_FALSE(c.ambiguous);
    CHECK(params_distance(li.label, c.params, p) < 1e-9);
  }
}

TEST_CASE("reducer maps the input onto the normal form") {
  Rng r = make_stream(1, "test/classify/reducer", 0);
  for (int k = 0; k < 300; ++k) {
    const PairAB x = random_pair(r);
    const auto c = classify_pair(x);
    if (c.ambiguous) continue;
    const PairAB y = apply_action(c.reducer, x);
    CHECK(pair_distance(y, representative(c.label, c.params)) <= 1e-7 * tolerance_scale(x));
  }
}

TEST_CASE("label and parameters are orbit invariants") {
  Rng r = make_stream(1, "test/classify/invariance", 0);
  for (const auto& li : taxonomy()) {
    const auto p = generic_params(li.label);
    const PairAB x0 = representative(li.label, p);
    for (int k = 0; k < 10; ++k) {
      const auto c = classify_pair(apply_action(random_group_element(r, 100.0), x0));
      CAPTURE(li.name);
      CHECK(c.label == li.label);
      CHECK(params_distance(li.label, c.params, p) < 1e-6);
    }
  }
}

TEST_CASE("generic random pairs land in top-dimensional strata") {
  Rng r = make_stream(1, "test/classify/generic", 0);
  for (int k = 0; k < 200; ++k) {
    const auto c = classify_pair(random_pair(r));
    CHECK_FALSE(c.ambiguous);
    CHECK(table_dimension(c.label) == 14);
  }
}

TEST_CASE("boundary inputs are flagged ambiguous with the lower stratum") {
  const auto c = classify_pair(theta_pair(1e-3));
  CHECK(c.ambiguous);
  CHECK(c.label.a == ALabel::Identity);
  REQUIRE(c.alternatives.size() == 1);
  CHECK(c.alternatives.front().a == ALabel::OneTheta);

  const auto far = classify_pair(theta_pair(0.5));
  CHECK_FALSE(far.ambiguous);
  CHECK(*far.params.theta == doctest::Approx(0.5));
}

TEST_CASE("near-rank-deficient B is ambiguous") {
  const auto c = classify_pair({Mat2::Zero(), {1.0, 0.0, 1e-8}});
  CHECK(c.ambiguous);
  CHECK(c.label == BundleLabel{ALabel::Zero, BShape::Rank1});
}

TEST_CASE("A-only classification") {
  BundleParams p;
  p.tau = 0.3;
  const Mat2 A = apply_psi1({std::polar(1.0, 0.4), m2(1, 2, 0.5, -1)}, a_representative(ALabel::TauForm, p));
  const auto a = classify_A(A);
  CHECK(a.label == ALabel::TauForm);
  CHECK(*a.params.tau == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(a.residual < 1e-9);
  CHECK_THROWS_AS(classify_A(theta_pair(1e-3).A), AmbiguityError);
  try {
    classify_A(theta_pair(1e-3).A);
  } catch (const AmbiguityError& e) {
    CHECK(e.candidates().size() == 2);
  }
}

TEST_CASE("B-only classification") {
  CHECK(classify_B({0.0, 0.0, 0.0}).label == BLabel::Zero);
  CHECK(classify_B({1.0, 1.0, 1.0}).label == BLabel::Rank1);
  const auto b = classify_B({2.0, I, 3.0});
  CHECK(b.label == BLabel::Rank2);
  CHECK(b.residual < 1e-12);
  CHECK_THROWS_AS(classify_B({1.0, 0.0, 1e-8}), AmbiguityError);
}

TEST_CASE("tolerance configuration") {
  ToleranceConfig t;
  CHECK_NOTHROW(t.validate());
  t.rank_tol = -1.0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
  const ToleranceConfig s = ToleranceConfig{}.scaled(10.0);
  CHECK(s.rank_tol == doctest::Approx(1e-7));
}

TEST_CASE("stabilizer reduction for the identity A") {
  const auto sr = stabilizer_reduce_B(ALabel::Identity, {}, {1.0, 0.0, 3.0});
  CHECK(sr.shape == BShape::DiagAD);
  CHECK(sr.membership < 1e-12);
}

TEST_CASE("non-finite input is rejected") {
  PairAB x;
  x.A(0, 0) = std::nan("");
  CHECK_THROWS_AS(classify_pair(x), ValidationError);
}

}  // TEST_SUITE
