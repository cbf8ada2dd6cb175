#include "helpers.hpp"

#include <pairbundle/normal_forms.hpp>

#include <doctest.h>

#include <cmath>
#include <set>

using namespace pbt;

TEST_SUITE("normal_forms") {

TEST_CASE("taxonomy has 48 distinct labels") {
  const auto& t = taxonomy();
  CHECK(t.size() == 48);
  std::set<BundleLabel> labels;
  std::set<std::string> names;
  for (const auto& li : t) {
    labels.insert(li.label);
    names.insert(li.name);
    CHECK(li.name == to_string(li.label));
    CHECK(is_catalogued(li.label));
  }
  CHECK(labels.size() == 48);
  CHECK(names.size() == 48);
}

TEST_CASE("label names round-trip through the parser") {
  for (const auto& li : taxonomy()) {
    const auto p = parse_label(li.name);
    REQUIRE(p.has_value());
    CHECK(*p == li.label);
  }
  CHECK_FALSE(parse_label("identity").has_value());
  CHECK_FALSE(parse_label("identity/no_such_shape").has_value());
  CHECK_FALSE(parse_label("").has_value());
  CHECK(parse_alabel("jordan_i") == ALabel::JordanI);
  CHECK_FALSE(parse_alabel("jordan").has_value());
}

TEST_CASE("tabulated dimensions") {
  auto dim = [](const char* n) { return table_dimension(*parse_label(n)); };
  CHECK(dim("one_theta/full_hermitian_like") == 14);
  CHECK(dim("tau_form/phase_form") == 14);
  CHECK(dim("one_theta/off_diag_plus_d") == 12);
  CHECK(dim("tau_form/off_diag_phase") == 12);
  CHECK(dim("nilpotent/zeta_star_b1") == 12);
  CHECK(dim("zero/rank2") == 6);
  CHECK(dim("zero/rank1") == 4);
  CHECK(dim("zero/zero") == 0);
}

TEST_CASE("supplementary strata are flagged") {
  int supp = 0;
  for (const auto& li : taxonomy()) supp += li.supplementary;
  CHECK(supp == 2);
  CHECK(label_info(*parse_label("jordan_i/sym_a_beta_zeta")).supplementary);
  CHECK(label_info(*parse_label("jordan_i/off_diag_delta")).supplementary);
  CHECK(table_dimension(*parse_label("jordan_i/sym_a_beta_zeta")) == 13);
  CHECK(table_dimension(*parse_label("jordan_i/off_diag_delta")) == 11);
}

TEST_CASE("B ranks and A bundle dimensions") {
  CHECK(b_rank(BLabel::Zero) == 0);
  CHECK(b_rank(BLabel::Rank2) == 2);
  CHECK(b_label_of_rank(1) == BLabel::Rank1);
  const int want[] = {0, 4, 5, 5, 8, 6, 8, 7};
  for (int k = 0; k < 8; ++k) CHECK(a_bundle_dimension(static_cast<ALabel>(k)) == want[k]);
}

TEST_CASE("A representatives") {
  BundleParams p;
  p.theta = kPi / 2;
  CHECK(max_norm(Mat2(a_representative(ALabel::OneTheta, p) - m2(1, 0, 0, I))) < 1e-15);
  p = {};
  p.tau = 0.25;
  CHECK(a_representative(ALabel::TauForm, p) == m2(0, 1, 0.25, 0));
  CHECK(a_representative(ALabel::JordanI, {}) == m2(0, 1, 1, I));
  CHECK(a_representative(ALabel::Nilpotent, {}) == m2(0, 1, 0, 0));
  CHECK(a_representative(ALabel::OnePlusMinus, {}) == m2(1, 0, 0, -1));
}

TEST_CASE("generic parameters are valid for every label") {
  for (const auto& li : taxonomy()) {
    const auto p = generic_params(li.label);
    CAPTURE(li.name);
    CHECK(validate_params(li.label, p).empty());
    const PairAB x = representative(li.label, p);
    CHECK(std::isfinite(max_norm(x)));
    CHECK(li.rank.lo <= li.rank.hi);
  }
}

TEST_CASE("parameter validation messages") {
  const BundleLabel theta0{ALabel::OneTheta, BShape::Zero};
  BundleParams p;
  CHECK(validate_params(theta0, p).front() == "missing parameter theta");
  p.theta = 4.0;
  CHECK_FALSE(validate_params(theta0, p).empty());
  CHECK_THROWS_AS(representative(theta0, p), ValidationError);

  const BundleLabel tau0{ALabel::TauForm, BShape::Zero};
  BundleParams q;
  q.tau = 1.0;
  CHECK_FALSE(validate_params(tau0, q).empty());

  const BundleLabel idad{ALabel::Identity, BShape::DiagAD};
  BundleParams r;
  r.a = 2.0;
  r.d = 2.0;
  CHECK(validate_params(idad, r).front().find("dI") != std::string::npos);
  r.d = 1.0;
  CHECK_FALSE(validate_params(idad, r).empty());
  const auto c = canonicalize_params(idad, r);
  CHECK(*c.a == 1.0);
  CHECK(*c.d == 2.0);
  CHECK(validate_params(idad, c).empty());

  CHECK_FALSE(validate_params(BundleLabel{ALabel::Zero, BShape::PhaseForm}, {}).empty());
}

TEST_CASE("canonical phase and sign conventions") {
  const BundleLabel pf = *parse_label("tau_form/phase_form");
  BundleParams p = generic_params(pf);
  p.phi = 0.7 + kPi;
  const auto c = canonicalize_params(pf, p);
  CHECK(*c.phi == doctest::Approx(0.7));
  CHECK(std::abs(*c.zeta + *p.zeta) < 1e-15);

  const BundleLabel fh = *parse_label("one_theta/full_hermitian_like");
  BundleParams q = generic_params(fh);
  q.zeta_star = cd(-1.0, -1.0);
  CHECK(*canonicalize_params(fh, q).zeta_star == cd(1.0, 1.0));
}

TEST_CASE("real parameter coordinates round-trip") {
  for (const auto& li : taxonomy()) {
    const auto p = generic_params(li.label);
    const auto v = params_to_real(li.label, p);
    CHECK(static_cast<int>(v.size()) == real_param_count(li.label));
    CHECK(params_distance(li.label, params_from_real(li.label, v), p) == 0.0);
  }
  CHECK_THROWS_AS(params_from_real(*parse_label("one_theta/diag_ad"), {1.0}), ValidationError);
}

}  // TEST_SUITE
