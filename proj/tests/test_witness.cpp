#include "helpers.hpp"

#include <pairbundle/closure.hpp>
#include <pairbundle/witness.hpp>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace pbt;

TEST_SUITE("witness") {

TEST_CASE("catalogue entries are well formed") {
  const auto& cat = witness_catalog();
  CHECK(cat.size() >= 25);
  std::set<std::string> ids;
  for (const auto& f : cat) {
    CAPTURE(f.id);
    ids.insert(f.id);
    CHECK(f.status == WitnessStatus::Unverified);
    CHECK(f.correction.is_identity());
    CHECK(is_catalogued(f.source));
    CHECK(is_catalogued(f.target));
    CHECK_FALSE(f.provenance.empty());
    CHECK(f.s_max > 0.0);
    CHECK(validate_params(f.source, f.source_params).empty());
  }
  CHECK(ids.size() == cat.size());
}

TEST_CASE("lookup by id and by edge") {
  const auto w1 = witness_by_id("W1");
  REQUIRE(w1.has_value());
  CHECK(to_string(w1->source) == "one_zero/zero");
  CHECK(to_string(w1->target) == "one_theta/zero");
  CHECK_FALSE(witness_by_id("W999").has_value());
  const auto same = witness_lookup(w1->source, w1->target);
  REQUIRE(same.has_value());
  CHECK(same->id == "W1");
  CHECK_FALSE(witnesses_for(w1->source, w1->target).empty());
}

TEST_CASE("evaluation domain") {
  const auto f = *witness_by_id("W1");
  CHECK_THROWS_AS(witness_eval(f, 0.0), ValidationError);
  CHECK_THROWS_AS(witness_eval(f, -0.1), ValidationError);
  CHECK_THROWS_AS(witness_eval(f, f.s_max * 2), ValidationError);
  const auto e = witness_eval(f, 0.01);
  CHECK(e.residual >= 0.0);
  CHECK(pair_distance(e.image, apply_action(e.g, f.target_instance_of_s(0.01))) == 0.0);
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(0.3, 4, 0.5);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == doctest::Approx(0.3));
  CHECK(g[3] == doctest::Approx(0.0375));
  CHECK_THROWS_AS(geometric_grid(0.3, 0, 0.5), ValidationError);
  CHECK_THROWS_AS(geometric_grid(0.3, 4, 1.5), ValidationError);
  CHECK_THROWS_AS(witness_verify(*witness_by_id("W1"), {0.1}), ValidationError);
}

TEST_CASE("verified families converge and are left alone by repair") {
  for (const char* id : {"W1", "W9", "W10", "W25"}) {
    const auto f = *witness_by_id(id);
    const auto rep = witness_verify(f, geometric_grid(f.s_max));
    CAPTURE(id);
    CHECK(rep.status == WitnessStatus::Verified);
    CHECK(rep.decreasing);
    const auto rr = witness_repair(f);
    CHECK_FALSE(rr.changed);
    CHECK(rr.family.correction.is_identity());
  }
}

TEST_CASE("normalization slips are repaired by a scale") {
  const auto f = *witness_by_id("W3");
  CHECK(f.known_typo);
  CHECK(witness_verify(f, geometric_grid(f.s_max)).status != WitnessStatus::Verified);
  const auto rr = witness_repair(f);
  CHECK(rr.changed);
  CHECK(rr.report.status == WitnessStatus::Repaired);
  CHECK(rr.family.correction.scale == doctest::Approx(std::sqrt(2.0)));
  CHECK(witness_eval(rr.family, 1e-3).residual < 1e-4);
}

TEST_CASE("a transposed family is repaired by transposition") {
  const auto rr = witness_repair(*witness_by_id("W23"));
  CHECK(rr.report.status == WitnessStatus::Repaired);
  CHECK(rr.family.correction.transpose);
  CHECK_FALSE(rr.family.correction.describe().empty());
}

TEST_CASE("families with no valid correction are refuted") {
  for (const char* id : {"W5", "W8"}) {
    const auto rr = witness_repair(*witness_by_id(id));
    CAPTURE(id);
    CHECK(rr.report.status == WitnessStatus::Refuted);
    CHECK_FALSE(rr.report.message.empty());
  }
}

TEST_CASE("every witness edge is an edge of the closure graph") {
  const auto& g = ClosureGraph::get();
  for (const auto& f : witness_catalog()) {
    CAPTURE(f.id);
    CHECK(g.is_path(f.source, f.target));
  }
}

TEST_CASE("repair is deterministic") {
  const auto a = witness_repair(*witness_by_id("W19b"));
  const auto b = witness_repair(*witness_by_id("W19b"));
  CHECK(a.report.status == b.report.status);
  CHECK(a.family.correction.describe() == b.family.correction.describe());
  CHECK(a.report.final_residual == b.report.final_residual);
}

}  // TEST_SUITE
