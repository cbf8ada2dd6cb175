#pragma once

#include "pairbundle/bounds.hpp"
#include "pairbundle/normal_forms.hpp"
#include "pairbundle/rng.hpp"
#include "pairbundle/witness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pb {

struct SearchOptions {
  int restarts = 32;
  std::uint64_t seed = kDefaultSeed;
  double step0 = 0.5;
  double step_min = 1e-9;
  int max_evals = 20000;  // per restart
  int random_directions = 8;
};

struct DistanceResult {
  double upper_bound = 0.0;
  GroupElement g;
  BundleParams params;
  int restarts = 0;
  long evals = 0;
};

// min over (c, P, params) of pair_distance(x, apply_action(g, representative(target, params))).
// Restart 0 starts from the classifier's reduction when x already lies in the target bundle.
DistanceResult distance_to_bundle(const PairAB& x, const BundleLabel& target, const SearchOptions& opt = {});
// A-only: min ||A - c P^* A0 P|| over c, P and the A-label's parameter.
DistanceResult distance_to_a_bundle(const Mat2& A, ALabel target, const SearchOptions& opt = {});
// B-only: min ||B - P^T B0 P||.
DistanceResult distance_to_b_orbit(const SymMat2& B, BLabel target, const SearchOptions& opt = {});

struct EmpiricalConstants {
  std::string src;
  std::string dst;
  std::vector<std::uint64_t> seeds;
  std::vector<double> floors;  // one optimizer floor per seed
  double floor = 0.0;          // min over seeds
  double mu_estimate = 0.0;    // sqrt(floor)
  std::optional<double> nu_estimate;
  std::vector<double> grid;
  bool contradiction = false;  // some floor fell below kContradictionFloor
};

inline constexpr double kContradictionFloor = 1e-4;

// Throws ValidationError when src -> dst is an edge.
EmpiricalConstants nonedge_floor(const BundleLabel& src, const BundleParams& src_params, const BundleLabel& dst,
                                 const SearchOptions& opt = {}, int seeds = 1);
EmpiricalConstants nonedge_floor_psi1(ALabel src, const BundleParams& src_params, ALabel dst,
                                      const SearchOptions& opt = {}, int seeds = 1);
EmpiricalConstants nonedge_floor_psi2(BLabel src, BLabel dst, const SearchOptions& opt = {}, int seeds = 1);

// nu = max over the witness grid of max(residuals) / sqrt(||E||) for the A-part of the family.
EmpiricalConstants fit_nu(Table3Row row, const WitnessFamily& f, const std::vector<double>& grid);

}  // namespace pb
