#pragma once

#include "pairbundle/classify.hpp"
#include "pairbundle/normal_forms.hpp"
#include "pairbundle/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pb {

struct NeighborhoodViolation {
  long trial = 0;
  PairAB sample;
  BundleLabel observed;
};

struct NeighborhoodReport {
  BundleLabel center;
  BundleParams params;
  double epsilon = 0.0;
  long trials = 0;
  std::map<BundleLabel, long> histogram;  // unambiguous samples only
  std::vector<NeighborhoodViolation> violations;
  long ambiguous = 0;
  long errors = 0;  // samples the classifier rejected outright

  bool pass() const { return violations.empty(); }
};

// Samples center + N with N uniform in the max-norm polydisc of radius epsilon
// (4 entries of A, 3 of B). Trial t draws from stream ("mc/<label>", t).
NeighborhoodReport monte_carlo_neighborhood(const BundleLabel& label, const BundleParams& params, double epsilon,
                                            long trials, std::uint64_t seed, const ToleranceConfig& tol = {});

}  // namespace pb
