#include "pairbundle/optimize.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pb {

CompassResult compass_minimize(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                               const CompassOptions& opt) {
  CompassResult r;
  r.x = std::move(x0);
  auto eval = [&](const std::vector<double>& x) {
    ++r.evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  r.value = eval(r.x);
  double step = opt.step0;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  while (step > opt.step_min && r.evals < opt.max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < r.x.size() && r.evals < opt.max_evals; ++i) {
      for (double dir : {1.0, -1.0}) {
        auto y = r.x;
        y[i] += dir * step;
        const double v = eval(y);
        if (v < r.value) {
          r.x = std::move(y);
          r.value = v;
          improved = true;
          break;
        }
      }
    }
    for (int k = 0; !improved && k < opt.random_directions && r.evals < opt.max_evals; ++k) {
      std::vector<double> d(r.x.size());
      double n2 = 0.0;
      for (auto& di : d) {
        di = gauss(rng);
        n2 += di * di;
      }
      const double inv = 1.0 / std::sqrt(n2);
      auto y = r.x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += step * d[i] * inv;
      const double v = eval(y);
      if (v < r.value) {
        r.x = std::move(y);
        r.value = v;
        improved = true;
      }
    }
    if (!improved) step *= opt.shrink;
  }
  return r;
}

}  // namespace pb
