#pragma once

#include <pairbundle/classify.hpp>
#include <pairbundle/rng.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pb::suite {

struct Check {
  std::string id;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  long failures() const;
  bool pass() const { return failures() == 0; }
};

// trials = 0 selects each suite's default sample count.
struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  long trials = 0;
  double epsilon = 1e-3;
  int budget = 32;
  int floor_seeds = 10;
  ToleranceConfig tol;
};

inline constexpr long kClassifyTrials = 200;
inline constexpr long kMonteCarloTrials = 1000;
inline constexpr long kBoundTrials = 10000;
inline constexpr long kInvariantMoves = 10000;
inline constexpr double kParamTol = 1e-6;
inline constexpr double kWitnessResidual = 1e-4;
inline constexpr double kWitnessProbe = 1e-3;
inline constexpr double kPsi2Floor = 0.99;
inline constexpr double kPsi1Floor = 1e-2;
inline constexpr double kDetRelTol = 1e-8;

SuiteReport run_dims(const SuiteConfig& cfg);
SuiteReport run_classify(const SuiteConfig& cfg);
// Graph axioms, witness edges and Monte Carlo neighbourhoods (ids graph/mc/<label>).
SuiteReport run_graph(const SuiteConfig& cfg);
SuiteReport run_witness(const SuiteConfig& cfg);
SuiteReport run_bounds(const SuiteConfig& cfg);
SuiteReport run_floors(const SuiteConfig& cfg);
SuiteReport run_invariants(const SuiteConfig& cfg);

const std::vector<std::string>& suite_names();
// Throws ValidationError for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg);

// Selected A-only non-edges whose floors are tracked across seeds.
struct Psi1Pair {
  ALabel src;
  ALabel dst;
};
const std::vector<Psi1Pair>& selected_psi1_nonedges();

}  // namespace pb::suite
