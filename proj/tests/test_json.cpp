#include "helpers.hpp"

#include "pbtool/json_io.hpp"

#include <doctest.h>

#include <cmath>

using namespace pbt;
namespace io = pb::io;

TEST_SUITE("json") {

TEST_CASE("complex scalars accept pairs and plain numbers") {
  CHECK(io::complex_from(io::json::parse("[1.5, -2]"), "z") == cd(1.5, -2.0));
  CHECK(io::complex_from(io::json::parse("3"), "z") == cd(3.0, 0.0));
  CHECK_THROWS_AS(io::complex_from(io::json::parse("\"x\""), "z"), ValidationError);
  CHECK_THROWS_AS(io::complex_from(io::json::parse("[1,2,3]"), "z"), ValidationError);
}

TEST_CASE("pairs round-trip with full precision") {
  Rng r = make_stream(1, "test/json/roundtrip", 0);
  for (int k = 0; k < 50; ++k) {
    const PairAB x = random_pair(r);
    const PairAB y = io::pair_from(io::parse_document(io::to_json(x).dump()));
    CHECK(pair_distance(x, y) == 0.0);
  }
}

TEST_CASE("group elements round-trip") {
  Rng r = make_stream(1, "test/json/group", 0);
  const GroupElement g = random_group_element(r);
  const GroupElement h = io::group_from(io::parse_document(io::to_json(g).dump()));
  CHECK(h.c == g.c);
  CHECK(h.P == g.P);
}

TEST_CASE("shape errors name the offending field") {
  try {
    io::pair_from(io::json::parse(R"({"A": [[1,0,0],[0,1,0],[0,0,1]], "B": [[0,0],[0,0]]})"));
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("A") != std::string::npos);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(io::sym_from(io::json::parse("[[1,2],[3,4]]"), "B"), ValidationError);
  CHECK(io::sym_from(io::json::parse(R"({"a":1,"b":2,"d":3})"), "B") == SymMat2{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(io::pair_from(io::json::parse(R"({"A": [[1,0],[0,1]]})")), ValidationError);
}

TEST_CASE("malformed documents report a position") {
  try {
    io::parse_document("{\"A\": [[1,0],[0,1]],");
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("classification report fields") {
  const auto c = classify_pair({Mat2::Identity(), {1.0, 0.0, 3.0}});
  const io::json j = io::to_json(c);
  CHECK(j.at("label") == "identity/diag_ad");
  CHECK(j.at("dimension") == 11);
  CHECK(j.at("ambiguous") == false);
  CHECK(j.at("params").at("d").get<double>() == doctest::Approx(3.0));
  const GroupElement g = io::group_from(j.at("reducer"));
  CHECK(pair_distance(apply_action(g, {Mat2::Identity(), {1.0, 0.0, 3.0}}), representative(c.label, c.params)) <
        1e-12);
}

TEST_CASE("parameters parse against the label") {
  const BundleLabel l = *parse_label("one_theta/full_hermitian_like");
  const auto p = io::params_from(l, io::json::parse(R"({"theta": 1, "a": 1, "d": 2, "zeta_star": [1, 1]})"));
  CHECK(*p.theta == 1.0);
  CHECK(*p.zeta_star == cd(1.0, 1.0));
  CHECK_THROWS_AS(io::params_from(l, io::json::parse(R"({"theta": 1})")), ValidationError);
  CHECK(io::params_to_json(p).size() == 4);
}

TEST_CASE("taxonomy export") {
  const io::json t = io::taxonomy_json();
  CHECK(t.size() == 48);
  CHECK(t.front().contains("label"));
  CHECK(t.front().contains("dimension"));
}

TEST_CASE("csv rows") {
  pb::suite::SuiteReport r{"demo", {{"demo/a", true, 0.5, "ok"}, {"demo/b", false, -1.0, "x, y"}}};
  const std::string csv = io::to_csv({r});
  CHECK(csv.rfind("suite,id,pass,margin,detail\n", 0) == 0);
  CHECK(csv.find("demo,demo/a,") != std::string::npos);
  CHECK(csv.find("\"x, y\"") != std::string::npos);
  CHECK(r.failures() == 1);
}

TEST_CASE("graph export as json") {
  const io::json j = io::to_json(export_graph(GraphKind::Psi1));
  CHECK(j.at("nodes").size() == 8);
  CHECK(j.at("edges").size() == 9);
}

}  // TEST_SUITE
