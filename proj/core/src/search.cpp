#include "pairbundle/search.hpp"

#include "pairbundle/classify.hpp"
#include "pairbundle/closure.hpp"
#include "pairbundle/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace pb {

namespace {

constexpr double kPenalty = 1e6;

enum class Slot { Angle, Unit, Positive, Free };

std::vector<Slot> slots_of(const std::vector<Param>& ps) {
  std::vector<Slot> s;
  for (Param p : ps) {
    switch (p) {
      case Param::Theta: s.push_back(Slot::Angle); break;
      case Param::Tau: s.push_back(Slot::Unit); break;
      case Param::A:
      case Param::B:
      case Param::D: s.push_back(Slot::Positive); break;
      case Param::Zeta:
      case Param::ZetaStar:
        s.push_back(Slot::Free);
        s.push_back(Slot::Free);
        break;
      default: s.push_back(Slot::Free); break;
    }
  }
  return s;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

double to_param(Slot s, double z) {
  switch (s) {
    case Slot::Angle: return kPi * sigmoid(z);
    case Slot::Unit: return sigmoid(z);
    case Slot::Positive: return std::exp(z);
    case Slot::Free: return z;
  }
  return z;
}

double from_param(Slot s, double v) {
  switch (s) {
    case Slot::Angle: return logit(std::clamp(v / kPi, 1e-12, 1 - 1e-12));
    case Slot::Unit: return logit(std::clamp(v, 1e-12, 1 - 1e-12));
    case Slot::Positive: return std::log(std::max(v, 1e-300));
    case Slot::Free: return v;
  }
  return v;
}

// Layout: [phase, Re P00, Re P01, Re P10, Re P11, Im ..., params...]
struct Layout {
  bool with_c = true;
  std::vector<Slot> slots;

  std::size_t size() const { return (with_c ? 1 : 0) + 8 + slots.size(); }

  GroupElement group(const std::vector<double>& z) const {
    GroupElement g;
    std::size_t o = 0;
    if (with_c) g.c = std::polar(1.0, z[o++]);
    for (int k = 0; k < 4; ++k) g.P(k / 2, k % 2) = cd(z[o + k], z[o + 4 + k]);
    return g;
  }

  std::vector<double> params(const std::vector<double>& z) const {
    std::vector<double> v;
    const std::size_t o = (with_c ? 1 : 0) + 8;
    for (std::size_t i = 0; i < slots.size(); ++i) v.push_back(to_param(slots[i], z[o + i]));
    return v;
  }

  std::vector<double> encode(const GroupElement& g, const std::vector<double>& params) const {
    std::vector<double> z;
    if (with_c) z.push_back(std::arg(g.c));
    for (int k = 0; k < 4; ++k) z.push_back(g.P(k / 2, k % 2).real());
    for (int k = 0; k < 4; ++k) z.push_back(g.P(k / 2, k % 2).imag());
    for (std::size_t i = 0; i < slots.size(); ++i) z.push_back(from_param(slots[i], params[i]));
    return z;
  }

  std::vector<double> random_start(Rng& rng) const {
    GroupElement g = random_group_element(rng);
    std::vector<double> z = encode(g, std::vector<double>(slots.size(), 0.0));
    std::normal_distribution<double> n;
    const std::size_t o = (with_c ? 1 : 0) + 8;
    for (std::size_t i = 0; i < slots.size(); ++i) z[o + i] = n(rng);
    return z;
  }
};

using Objective = std::function<double(const std::vector<double>&)>;

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> z;
  long evals = 0;
};

Best multistart(const Objective& f, const Layout& lay, const std::optional<std::vector<double>>& seed_point,
                const SearchOptions& opt, std::string_view stream) {
  if (opt.restarts < 1) throw ValidationError("budget must be >= 1 restart");
  Best best;
  for (int r = 0; r < opt.restarts; ++r) {
    Rng rng = make_stream(opt.seed, stream, static_cast<std::uint64_t>(r));
    std::vector<double> z0 = (r == 0 && seed_point) ? *seed_point : lay.random_start(rng);
    CompassOptions co;
    co.step0 = opt.step0;
    co.step_min = opt.step_min;
    co.max_evals = opt.max_evals;
    co.random_directions = opt.random_directions;
    co.seed = rng();
    auto res = compass_minimize(f, std::move(z0), co);
    best.evals += res.evals;
    if (res.value < best.value) {
      best.value = res.value;
      best.z = std::move(res.x);
    }
    if (best.value == 0.0) break;
  }
  return best;
}

}  // namespace

DistanceResult distance_to_bundle(const PairAB& x, const BundleLabel& target, const SearchOptions& opt) {
  validate(x);
  if (!is_catalogued(target)) throw ValidationError("label not in the taxonomy: " + to_string(target));
  Layout lay;
  lay.slots = slots_of(label_info(target).params);

  auto build = [&](const std::vector<double>& z) -> std::optional<BundleParams> {
    try {
      auto p = canonicalize_params(target, params_from_real(target, lay.params(z)));
      if (!validate_params(target, p).empty()) return std::nullopt;
      return p;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  Objective f = [&](const std::vector<double>& z) {
    const auto p = build(z);
    if (!p) return kPenalty;
    return pair_distance(x, apply_action(lay.group(z), representative(target, *p)));
  };

  std::optional<std::vector<double>> seed_point;
  try {
    const auto c = classify_pair(x);
    if (c.label == target) seed_point = lay.encode(group_inverse(c.reducer), params_to_real(target, c.params));
  } catch (const std::exception&) {
  }

  const Best b = multistart(f, lay, seed_point, opt, "dist/" + to_string(target));
  DistanceResult out;
  out.upper_bound = b.value;
  out.g = lay.group(b.z);
  if (auto p = build(b.z)) out.params = *p;
  out.restarts = opt.restarts;
  out.evals = b.evals;
  return out;
}

DistanceResult distance_to_a_bundle(const Mat2& A, ALabel target, const SearchOptions& opt) {
  require_finite(A, "A");
  const BundleLabel lab{target, BShape::Zero};
  Layout lay;
  lay.slots = slots_of(label_info(lab).params);
  Objective f = [&](const std::vector<double>& z) {
    try {
      const auto p = params_from_real(lab, lay.params(z));
      if (!validate_params(lab, p).empty()) return kPenalty;
      return max_norm(Mat2(A - apply_psi1(lay.group(z), a_representative(target, p))));
    } catch (const std::exception&) {
      return kPenalty;
    }
  };
  const Best b = multistart(f, lay, std::nullopt, opt, "dist-a/" + to_string(target));
  DistanceResult out;
  out.upper_bound = b.value;
  out.g = lay.group(b.z);
  out.params = params_from_real(lab, lay.params(b.z));
  out.restarts = opt.restarts;
  out.evals = b.evals;
  return out;
}

DistanceResult distance_to_b_orbit(const SymMat2& B, BLabel target, const SearchOptions& opt) {
  require_finite(B, "B");
  Layout lay;
  lay.with_c = false;
  SymMat2 B0;
  if (target == BLabel::Rank1) B0 = {1.0, 0.0, 0.0};
  if (target == BLabel::Rank2) B0 = {1.0, 0.0, 1.0};
  Objective f = [&](const std::vector<double>& z) { return max_norm(B - apply_psi2(lay.group(z).P, B0)); };
  const Best b = multistart(f, lay, std::nullopt, opt, "dist-b/" + to_string(target));
  DistanceResult out;
  out.upper_bound = b.value;
  out.g = lay.group(b.z);
  out.restarts = opt.restarts;
  out.evals = b.evals;
  return out;
}

namespace {

EmpiricalConstants collect(std::string src, std::string dst, const SearchOptions& opt, int seeds,
                           const std::function<double(const SearchOptions&)>& run) {
  if (seeds < 1) throw ValidationError("seeds must be >= 1");
  EmpiricalConstants e;
  e.src = std::move(src);
  e.dst = std::move(dst);
  for (int i = 0; i < seeds; ++i) {
    SearchOptions o = opt;
    o.seed = splitmix64(opt.seed + static_cast<std::uint64_t>(i));
    e.seeds.push_back(o.seed);
    e.floors.push_back(run(o));
  }
  e.floor = *std::min_element(e.floors.begin(), e.floors.end());
  e.mu_estimate = std::sqrt(e.floor);
  e.contradiction = e.floor < kContradictionFloor;
  return e;
}

}  // namespace

EmpiricalConstants nonedge_floor(const BundleLabel& src, const BundleParams& sp, const BundleLabel& dst,
                                 const SearchOptions& opt, int seeds) {
  if (ClosureGraph::get().is_path(src, dst))
    throw ValidationError(to_string(src) + " -> " + to_string(dst) + " is an edge of the closure graph");
  const PairAB x = representative(src, sp);
  return collect(to_string(src), to_string(dst), opt, seeds,
                 [&](const SearchOptions& o) { return distance_to_bundle(x, dst, o).upper_bound; });
}

EmpiricalConstants nonedge_floor_psi1(ALabel src, const BundleParams& sp, ALabel dst, const SearchOptions& opt,
                                      int seeds) {
  if (is_path_psi1(src, dst))
    throw ValidationError(to_string(src) + " -> " + to_string(dst) + " is an edge of the A-only closure graph");
  const Mat2 A = a_representative(src, sp);
  return collect(to_string(src), to_string(dst), opt, seeds,
                 [&](const SearchOptions& o) { return distance_to_a_bundle(A, dst, o).upper_bound; });
}

EmpiricalConstants nonedge_floor_psi2(BLabel src, BLabel dst, const SearchOptions& opt, int seeds) {
  if (is_path_psi2(src, dst))
    throw ValidationError(to_string(src) + " -> " + to_string(dst) + " is an edge of the rank chain");
  SymMat2 B;
  if (src == BLabel::Rank1) B = {1.0, 0.0, 0.0};
  if (src == BLabel::Rank2) B = {1.0, 0.0, 1.0};
  return collect(to_string(src), to_string(dst), opt, seeds,
                 [&](const SearchOptions& o) { return distance_to_b_orbit(B, dst, o).upper_bound; });
}

EmpiricalConstants fit_nu(Table3Row row, const WitnessFamily& f, const std::vector<double>& grid) {
  EmpiricalConstants e;
  e.src = to_string(f.source);
  e.dst = to_string(f.target);
  e.grid = grid;
  const Mat2 At = f.source_pair().A;
  double nu = 0.0;
  for (double s : grid) {
    const auto g = f.element(s);
    const Mat2 A = f.target_instance_of_s(s).A;
    const double nE = max_norm(Mat2(g.c * g.P.adjoint() * A * g.P - At));
    if (!(nE > 0)) continue;
    const auto r = table3_residuals(row, At, A, g.c, g.P);
    nu = std::max(nu, *std::max_element(r.begin(), r.end()) / std::sqrt(nE));
  }
  e.nu_estimate = nu;
  return e;
}

}  // namespace pb
