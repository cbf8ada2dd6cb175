#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace pb {

struct CompassOptions {
  double step0 = 0.5;
  double step_min = 1e-9;
  double shrink = 0.5;
  int max_evals = 20000;
  // Extra random unit directions polled before each step reduction.
  int random_directions = 0;
  std::uint64_t seed = 0;
};

struct CompassResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
};

// Derivative-free pattern search over the coordinate directions, optionally augmented by random ones.
CompassResult compass_minimize(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               const CompassOptions& opt = {});

}  // namespace pb
