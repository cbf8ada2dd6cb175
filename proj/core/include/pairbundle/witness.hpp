#pragma once

#include "pairbundle/core.hpp"
#include "pairbundle/normal_forms.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pb {

enum class WitnessStatus { Unverified, Verified, Repaired, Refuted };

std::string to_string(WitnessStatus s);

// Applied on top of the printed P(s) and c(s): P -> t * swap(transpose(P)), c -> c e^{i phase}.
struct WitnessCorrection {
  double scale = 1.0;
  double phase = 0.0;
  bool transpose = false;
  enum class Swap { None, Left, Right } swap = Swap::None;

  bool is_identity() const;
  std::string describe() const;
};

struct WitnessFamily {
  std::string id;
  BundleLabel source;
  BundleParams source_params;
  BundleLabel target;
  std::function<cd(double)> c_of_s;
  std::function<Mat2(double)> P_of_s;
  std::function<PairAB(double)> target_instance_of_s;
  std::string provenance;
  WitnessStatus status = WitnessStatus::Unverified;
  double s_max = 0.3;
  bool known_typo = false;
  WitnessCorrection correction;

  GroupElement element(double s) const;
  PairAB source_pair() const;
};

// Families shipped with status Unverified.
const std::vector<WitnessFamily>& witness_catalog();
std::optional<WitnessFamily> witness_by_id(std::string_view id);
std::optional<WitnessFamily> witness_lookup(const BundleLabel& src, const BundleLabel& dst);
std::vector<WitnessFamily> witnesses_for(const BundleLabel& src, const BundleLabel& dst);

struct WitnessEval {
  GroupElement g;
  PairAB image;
  double residual = 0.0;
};

// Throws ValidationError outside (0, s_max] and SingularError for singular P(s).
WitnessEval witness_eval(const WitnessFamily& f, double s);

// n points s_max, s_max/2, ...
std::vector<double> geometric_grid(double s_max = 0.3, int n = 12, double ratio = 0.5);

struct WitnessPoint {
  double s = 0.0;
  double residual = 0.0;
};

struct WitnessReport {
  std::string id;
  WitnessStatus status = WitnessStatus::Unverified;
  std::vector<WitnessPoint> points;
  bool decreasing = false;
  double final_residual = 0.0;
  // log2 of successive residual ratios averaged over the grid tail.
  double order = 0.0;
  std::string message;
};

inline constexpr double kWitnessTol = 1e-3;

// Throws ValidationError("insufficient grid") for fewer than two points.
WitnessReport witness_verify(const WitnessFamily& f, const std::vector<double>& s_grid, double tol = kWitnessTol);

struct RepairResult {
  WitnessFamily family;
  WitnessReport report;
  bool changed = false;
};

// Verified families come back unchanged; otherwise the best correction is tried and the
// family is marked Repaired or Refuted.
RepairResult witness_repair(const WitnessFamily& f, double tol = kWitnessTol);

}  // namespace pb
