#include "pairbundle/montecarlo.hpp"

#include "pairbundle/closure.hpp"

namespace pb {

NeighborhoodReport monte_carlo_neighborhood(const BundleLabel& label, const BundleParams& params, double epsilon,
                                            long trials, std::uint64_t seed, const ToleranceConfig& tol) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) throw ValidationError("epsilon must lie in (0, 0.1]");
  if (trials < 1) throw ValidationError("trials must be >= 1");
  const PairAB center = representative(label, params);
  const ClosureGraph& graph = ClosureGraph::get();
  const std::string stream = "mc/" + to_string(label);

  NeighborhoodReport rep;
  rep.center = label;
  rep.params = params;
  rep.epsilon = epsilon;
  rep.trials = trials;
  for (long t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, stream, static_cast<std::uint64_t>(t));
    PairAB x = center;
    x.A += random_polydisc(rng, epsilon);
    const SymMat2 n = random_sym_polydisc(rng, epsilon);
    x.B = SymMat2(x.B.a + n.a, x.B.b + n.b, x.B.d + n.d);
    try {
      const Classification c = classify_pair(x, tol);
      if (c.ambiguous) {
        ++rep.ambiguous;
        continue;
      }
      ++rep.histogram[c.label];
      if (!graph.is_path(label, c.label)) rep.violations.push_back({t, x, c.label});
    } catch (const AmbiguityError&) {
      ++rep.ambiguous;
    } catch (const ClassificationError&) {
      ++rep.errors;
    }
  }
  return rep;
}

}  // namespace pb
