#include "helpers.hpp"

#include <pairbundle/dimension.hpp>

#include <doctest.h>

using namespace pbt;

TEST_SUITE("dimension") {

TEST_CASE("numeric tangent rank matches the table for every label") {
  for (const auto& li : taxonomy()) {
    CAPTURE(li.name);
    const auto r = dimension_report(li.label, generic_params(li.label));
    CHECK(r.stable());
    CHECK(r.rank == li.dim);
  }
}

TEST_CASE("worked examples") {
  const BundleLabel full = *parse_label("one_theta/full_hermitian_like");
  CHECK(bundle_dimension_numeric(full, generic_params(full)) == 14);
  CHECK(bundle_dimension_numeric(BundleLabel{}, {}) == 0);
  BundleParams p;
  p.a = 1.0;
  p.d = 3.0;
  CHECK(bundle_dimension_numeric(*parse_label("identity/diag_ad"), p) == 11);
}

TEST_CASE("dimension does not depend on the generic parameter choice") {
  const BundleLabel l = *parse_label("tau_form/phase_form");
  BundleParams p = generic_params(l);
  for (double tau : {0.1, 0.5, 0.9}) {
    p.tau = tau;
    CHECK(bundle_dimension_numeric(l, p) == 14);
  }
}

TEST_CASE("orbit dimensions of the B factor") {
  CHECK(psi2_orbit_dimension(BLabel::Zero) == 0);
  CHECK(psi2_orbit_dimension(BLabel::Rank1) == 2);
  CHECK(psi2_orbit_dimension(BLabel::Rank2) == 3);
}

TEST_CASE("A-only bundle dimensions") {
  for (int k = 0; k < 8; ++k) {
    const auto a = static_cast<ALabel>(k);
    CAPTURE(to_string(a));
    CHECK(psi1_bundle_dimension_numeric(a) == a_bundle_dimension(a));
  }
}

TEST_CASE("singular values are reported in descending order") {
  const auto r = dimension_report(*parse_label("nilpotent/zero"), {});
  REQUIRE(r.singular_values.size() >= 2);
  for (std::size_t i = 1; i < r.singular_values.size(); ++i)
    CHECK(r.singular_values[i] <= r.singular_values[i - 1]);
}

}  // TEST_SUITE
