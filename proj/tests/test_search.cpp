#include "helpers.hpp"

#include <pairbundle/closure.hpp>
#include <pairbundle/optimize.hpp>
#include <pairbundle/search.hpp>

#include <doctest.h>

#include <cmath>

using namespace pbt;

namespace {

SearchOptions small(int restarts = 4) {
  SearchOptions o;
  o.restarts = restarts;
  return o;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("pattern search minimizes a shifted quadratic") {
  auto f = [](const std::vector<double>& x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 10 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto r = compass_minimize(f, {0.0, 0.0});
  CHECK(r.value < 1e-12);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-5));
  CHECK(r.evals > 0);
}

TEST_CASE("distance from a bundle member to its own bundle is tiny") {
  Rng r = make_stream(1, "test/search/self", 0);
  for (const char* n : {"identity/diag_ad", "one_theta/zero", "nilpotent/anti_diag", "tau_form/diag_01"}) {
    const BundleLabel l = *parse_label(n);
    const PairAB x = apply_action(random_group_element(r, 10.0), representative(l, generic_params(l)));
    CAPTURE(n);
    CHECK(distance_to_bundle(x, l, small(2)).upper_bound <= 1e-8);
  }
}

TEST_CASE("the upper bound is attained by the returned element") {
  const BundleLabel src = *parse_label("one_zero/swap"), dst = *parse_label("one_theta/anti_diag");
  const PairAB x = representative(src, generic_params(src));
  const auto d = distance_to_bundle(x, dst, small());
  CHECK(d.upper_bound < pair_distance(x, representative(dst, generic_params(dst))));
  CHECK(validate_params(dst, d.params).empty());
  CHECK(pair_distance(x, apply_action(d.g, representative(dst, d.params))) == doctest::Approx(d.upper_bound));
}

TEST_CASE("rank two to rank one floor of the B factor is one half") {
  const auto d = distance_to_b_orbit({1.0, 0.0, 1.0}, BLabel::Rank1, small(16));
  CHECK(d.upper_bound == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(distance_to_b_orbit({1.0, 0.0, 0.0}, BLabel::Rank1, small(2)).upper_bound < 1e-8);
}

TEST_CASE("A-only distances") {
  CHECK(distance_to_a_bundle(Mat2::Identity(), ALabel::Identity, small(2)).upper_bound < 1e-8);
  CHECK(distance_to_a_bundle(Mat2::Zero(), ALabel::Nilpotent, small(2)).upper_bound < 1e-6);
  CHECK(distance_to_a_bundle(Mat2::Identity(), ALabel::OnePlusMinus, small(8)).upper_bound > 0.1);
}

TEST_CASE("non-edge floors refuse edges and stay positive") {
  CHECK_THROWS_AS(nonedge_floor_psi1(ALabel::Identity, {}, ALabel::OneTheta, small()), ValidationError);
  CHECK_THROWS_AS(nonedge_floor_psi2(BLabel::Rank1, BLabel::Rank2, small()), ValidationError);
  const BundleLabel a = *parse_label("zero/rank1"), b = *parse_label("zero/rank2");
  CHECK_THROWS_AS(nonedge_floor(a, {}, b, small()), ValidationError);

  const auto e = nonedge_floor_psi1(ALabel::Identity, {}, ALabel::OnePlusMinus, small(8), 2);
  CHECK(e.seeds.size() == 2);
  CHECK(e.floors.size() == 2);
  CHECK(e.floor > 1e-2);
  CHECK_FALSE(e.contradiction);
  CHECK(e.mu_estimate == doctest::Approx(std::sqrt(e.floor)));
}

TEST_CASE("search results depend only on the seed") {
  const BundleLabel l = *parse_label("one_theta/diag_ad");
  Rng r = make_stream(5, "test/search/det", 0);
  const PairAB x{random_polydisc(r, 1.0), {1.0, 0.0, 2.0}};
  SearchOptions o = small(3);
  o.seed = 77;
  const auto a = distance_to_bundle(x, l, o), b = distance_to_bundle(x, l, o);
  CHECK(a.upper_bound == b.upper_bound);
  CHECK(a.evals == b.evals);
}

TEST_CASE("invalid budgets are rejected") {
  CHECK_THROWS_AS(distance_to_bundle(PairAB{}, BundleLabel{}, small(0)), ValidationError);
  CHECK_THROWS_AS(nonedge_floor_psi2(BLabel::Rank2, BLabel::Rank1, small(), 0), ValidationError);
}

}  // TEST_SUITE
