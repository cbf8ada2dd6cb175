#pragma once

#include "pairbundle/normal_forms.hpp"

#include <stdexcept>
#include <vector>

namespace pb {

class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRankCutoff = 1e-8;
inline constexpr double kDiffStep = 1e-6;

struct DimensionReport {
  int rank = 0;
  int rank_tight = 0;  // cutoff / 10
  int rank_loose = 0;  // cutoff * 10
  std::vector<double> singular_values;
  bool stable() const { return rank == rank_tight && rank == rank_loose; }
};

// Real rank of the tangent images at the representative: 9 group directions plus
// central differences over the label's real parameters.
DimensionReport dimension_report(const BundleLabel& l, const BundleParams& p, double cutoff = kRankCutoff);
// Throws InstabilityError when the rank moves under cutoff x10 or /10.
int bundle_dimension_numeric(const BundleLabel& l, const BundleParams& p);

// Complex dimension of the T-congruence orbit of the B-label's normal form.
DimensionReport psi2_orbit_report(BLabel b, double cutoff = kRankCutoff);
int psi2_orbit_dimension(BLabel b);

// Real dimension of the A-only bundle from the same tangent machinery.
int psi1_bundle_dimension_numeric(ALabel a);

}  // namespace pb
