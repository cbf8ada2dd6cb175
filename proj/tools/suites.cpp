#include "pbtool/suites.hpp"

#include <pairbundle/bounds.hpp>
#include <pairbundle/closure.hpp>
#include <pairbundle/dimension.hpp>
#include <pairbundle/montecarlo.hpp>
#include <pairbundle/search.hpp>
#include <pairbundle/witness.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pb::suite {

long SuiteReport::failures() const {
  return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
}

namespace {

constexpr ALabel kALabels[] = {ALabel::Zero,         ALabel::OneZero,  ALabel::Identity, ALabel::OnePlusMinus,
                               ALabel::OneTheta,     ALabel::Nilpotent, ALabel::TauForm, ALabel::JordanI};
constexpr BLabel kBLabels[] = {BLabel::Zero, BLabel::Rank1, BLabel::Rank2};

long trials_or(const SuiteConfig& cfg, long fallback) { return cfg.trials > 0 ? cfg.trials : fallback; }

SearchOptions search_options(const SuiteConfig& cfg) {
  SearchOptions o;
  o.restarts = cfg.budget;
  o.seed = cfg.seed;
  return o;
}

}  // namespace

SuiteReport run_dims(const SuiteConfig&) {
  SuiteReport r{"dims", {}};
  for (const auto& li : taxonomy()) {
    const auto rep = dimension_report(li.label, generic_params(li.label));
    const int want = table_dimension(li.label);
    r.checks.push_back({"dims/" + li.name, rep.rank == want && rep.stable(), -std::abs(rep.rank - want) * 1.0,
                        fmt::format("rank={} (cutoff/10: {}, x10: {}) table={}", rep.rank, rep.rank_tight,
                                    rep.rank_loose, want)});
  }
  const int want_psi2[] = {0, 2, 3};
  for (BLabel b : kBLabels) {
    const auto rep = psi2_orbit_report(b);
    const int dim = rep.rank;
    const int want = want_psi2[b_rank(b)];
    r.checks.push_back({"dims/psi2/" + to_string(b), dim == want && rep.stable(), -std::abs(dim - want) * 1.0,
                        fmt::format("complex orbit dim={} expected={}", dim, want)});
  }
  for (ALabel a : kALabels) {
    const int dim = psi1_bundle_dimension_numeric(a);
    const int want = a_bundle_dimension(a);
    r.checks.push_back({"dims/psi1/" + to_string(a), dim == want, -std::abs(dim - want) * 1.0,
                        fmt::format("real bundle dim={} expected={}", dim, want)});
  }
  return r;
}

SuiteReport run_classify(const SuiteConfig& cfg) {
  SuiteReport r{"classify", {}};
  const long n = trials_or(cfg, kClassifyTrials);
  for (const auto& li : taxonomy()) {
    const BundleParams p0 = canonicalize_params(li.label, generic_params(li.label));
    const PairAB x0 = representative(li.label, p0);
    long mismatches = 0, ambiguous = 0;
    double worst = 0.0;
    std::string first;
    for (long t = 0; t < n; ++t) {
      Rng rng = make_stream(cfg.seed, "classify/" + li.name, static_cast<std::uint64_t>(t));
      const PairAB x = apply_action(random_group_element(rng), x0);
      try {
        const Classification c = classify_pair(x, cfg.tol);
        if (c.ambiguous) ++ambiguous;
        if (c.label != li.label) {
          if (mismatches++ == 0) first = to_string(c.label);
          continue;
        }
        worst = std::max(worst, params_distance(li.label, canonicalize_params(li.label, c.params), p0));
      } catch (const std::exception& e) {
        if (mismatches++ == 0) first = e.what();
      }
    }
    const bool ok = mismatches == 0 && worst <= kParamTol;
    std::string detail = fmt::format("trials={} mismatches={} ambiguous={} worst_param_err={:.3g}", n, mismatches,
                                     ambiguous, worst);
    if (!first.empty()) detail += "; first mismatch: " + first;
    r.checks.push_back({"classify/" + li.name, ok, mismatches > 0 ? -static_cast<double>(mismatches) : kParamTol - worst,
                        detail});
  }
  return r;
}

SuiteReport run_graph(const SuiteConfig& cfg) {
  SuiteReport r{"graph", {}};
  const auto& g = ClosureGraph::get();
  const auto& nodes = g.nodes();

  long bad_refl = 0, bad_trans = 0, bad_dim = 0, bad_proj = 0;
  for (const auto& x : nodes) {
    if (!g.is_path(x, x)) ++bad_refl;
    for (const auto& y : nodes) {
      if (!g.is_path(x, y)) continue;
      const auto& xi = label_info(x);
      const auto& yi = label_info(y);
      if (!(x == y) && xi.dim >= yi.dim) ++bad_dim;
      if (!is_path_psi1(x.a, y.a)) ++bad_proj;
      if (yi.rank.pure() && xi.rank.hi > yi.rank.lo) ++bad_proj;
      for (const auto& z : nodes)
        if (g.is_path(y, z) && !g.is_path(x, z)) ++bad_trans;
    }
  }
  auto axiom = [&](const char* id, long bad, const char* what) {
    r.checks.push_back({id, bad == 0, -static_cast<double>(bad), fmt::format("{} violations: {}", what, bad)});
  };
  axiom("graph/reflexive", bad_refl, "reflexivity");
  axiom("graph/transitive", bad_trans, "transitivity");
  axiom("graph/dimension_monotone", bad_dim, "dimension monotonicity");
  axiom("graph/projection", bad_proj, "projection consistency");

  long off_graph = 0;
  for (const auto& f : witness_catalog())
    if (!g.is_path(f.source, f.target)) ++off_graph;
  axiom("graph/witness_edges", off_graph, "witness families off the graph");

  const long n = trials_or(cfg, kMonteCarloTrials);
  for (const auto& li : taxonomy()) {
    const auto rep = monte_carlo_neighborhood(li.label, generic_params(li.label), cfg.epsilon, n, cfg.seed, cfg.tol);
    std::string detail = fmt::format("trials={} eps={:g} violations={} ambiguous={} errors={}", n, cfg.epsilon,
                                     rep.violations.size(), rep.ambiguous, rep.errors);
    if (!rep.violations.empty()) detail += "; first: " + to_string(rep.violations.front().observed);
    r.checks.push_back({"graph/mc/" + li.name, rep.pass(), -static_cast<double>(rep.violations.size()), detail});
  }
  return r;
}

SuiteReport run_witness(const SuiteConfig&) {
  SuiteReport r{"witness", {}};
  for (const auto& f : witness_catalog()) {
    const RepairResult rr = witness_repair(f);
    const WitnessReport& rep = rr.report;
    double probe = std::numeric_limits<double>::infinity();
    try {
      probe = witness_eval(rr.family, kWitnessProbe).residual;
    } catch (const std::exception&) {
    }
    const bool status_ok = rep.status == WitnessStatus::Verified ||
                           (rep.status == WitnessStatus::Repaired && f.known_typo);
    const bool ok = status_ok && rep.decreasing && probe < kWitnessResidual;
    std::string detail = fmt::format("{} -> {}; status={}; order={:.2f}; residual(s=1e-3)={:.3g}; decreasing={}",
                                     to_string(f.source), to_string(f.target), to_string(rep.status), rep.order, probe,
                                     rep.decreasing);
    if (rr.changed) detail += "; correction: " + rr.family.correction.describe();
    if (rep.status == WitnessStatus::Repaired && !f.known_typo) detail += "; repaired family is not a known typo";
    detail += "; provenance: " + rr.family.provenance;
    r.checks.push_back({"witness/" + f.id, ok, kWitnessResidual - probe, detail});
  }
  return r;
}

SuiteReport run_bounds(const SuiteConfig& cfg) {
  SuiteReport r{"bounds", {}};
  const long n = trials_or(cfg, kBoundTrials);
  auto add = [&](const std::string& id, const BoundSweep& s, long want) {
    const bool ok = s.violations == 0 && s.in_hypothesis >= want;
    r.checks.push_back({id, ok, s.min_margin,
                        fmt::format("in_hypothesis={} violations={} worst_ratio={:.3g}", s.in_hypothesis,
                                    s.violations, s.worst_ratio)});
  };
  for (LemadetMode m : {LemadetMode::PAE, LemadetMode::CE, LemadetMode::PBF, LemadetMode::Part3})
    add("bounds/" + to_string(m), lemadet_sweep(m, n, cfg.seed), n);
  add("bounds/detxe", detxe_sweep(10 * n, cfg.seed), 10 * n);
  const long n4 = std::max(1L, n / 10);
  for (Table4Row row : {Table4Row::D1, Table4Row::D2, Table4Row::D3})
    add("bounds/table4/" + to_string(row), table4_sweep(row, n4, cfg.seed), n4);
  return r;
}

const std::vector<Psi1Pair>& selected_psi1_nonedges() {
  static const std::vector<Psi1Pair> v = {{ALabel::OneTheta, ALabel::TauForm},
                                          {ALabel::TauForm, ALabel::OneTheta},
                                          {ALabel::Identity, ALabel::OnePlusMinus},
                                          {ALabel::Nilpotent, ALabel::JordanI},
                                          {ALabel::Identity, ALabel::Nilpotent}};
  return v;
}

SuiteReport run_floors(const SuiteConfig& cfg) {
  SuiteReport r{"floors", {}};
  const SearchOptions opt = search_options(cfg);

  for (BLabel s : kBLabels)
    for (BLabel d : kBLabels) {
      if (is_path_psi2(s, d)) continue;
      const auto e = nonedge_floor_psi2(s, d, opt, cfg.floor_seeds);
      const bool headline = s == BLabel::Rank2 && d == BLabel::Rank1;
      const double need = headline ? kPsi2Floor : kContradictionFloor;
      r.checks.push_back({"floors/psi2/" + e.src + "->" + e.dst, e.floor >= need, e.floor - need,
                          fmt::format("floor={:.6g} required>={:g} seeds={}", e.floor, need, e.floors.size())});
    }

  for (const auto& p : selected_psi1_nonedges()) {
    const auto e = nonedge_floor_psi1(p.src, generic_params({p.src, BShape::Zero}), p.dst, opt, cfg.floor_seeds);
    const double worst = *std::max_element(e.floors.begin(), e.floors.end());
    r.checks.push_back({"floors/psi1/" + e.src + "->" + e.dst, e.floor > kPsi1Floor, e.floor - kPsi1Floor,
                        fmt::format("min floor={:.6g} max floor={:.6g} mu~{:.4g} seeds={}", e.floor, worst,
                                    e.mu_estimate, e.floors.size())});
  }

  long contradictions = 0;
  double lowest = std::numeric_limits<double>::infinity();
  std::string lowest_id;
  for (ALabel s : kALabels)
    for (ALabel d : kALabels) {
      if (is_path_psi1(s, d)) continue;
      const auto e = nonedge_floor_psi1(s, generic_params({s, BShape::Zero}), d, opt, 1);
      if (e.contradiction) ++contradictions;
      if (e.floor < lowest) {
        lowest = e.floor;
        lowest_id = e.src + "->" + e.dst;
      }
    }
  r.checks.push_back({"floors/psi1/no_contradiction", contradictions == 0, lowest - kContradictionFloor,
                      fmt::format("non-edges below {:g}: {}; lowest floor {:.4g} at {}", kContradictionFloor,
                                  contradictions, lowest, lowest_id)});
  return r;
}

SuiteReport run_invariants(const SuiteConfig& cfg) {
  SuiteReport r{"invariants", {}};
  const long moves = trials_or(cfg, kInvariantMoves);
  std::vector<PairAB> bases;
  for (const auto& li : taxonomy()) bases.push_back(representative(li.label, generic_params(li.label)));
  for (int k = 0; bases.size() < 100; ++k) {
    Rng rng = make_stream(cfg.seed, "invariants/base", static_cast<std::uint64_t>(k));
    bases.push_back({random_polydisc(rng, 1.0), random_sym_polydisc(rng, 1.0)});
  }

  double worst_rel = 0.0;
  long flips = 0, counted = 0;
  for (long t = 0; t < moves; ++t) {
    const PairAB& x0 = bases[static_cast<std::size_t>(t) % bases.size()];
    Rng rng = make_stream(cfg.seed, "invariants/move", static_cast<std::uint64_t>(t));
    const PairAB x1 = apply_action(random_group_element(rng), x0);
    const DetSign s0 = det_sign(x0), s1 = det_sign(x1);
    if (s0 != s1) ++flips;
    if (s0 != DetSign::Zero) {
      const double d0 = det_invariant(x0);
      worst_rel = std::max(worst_rel, std::abs(det_invariant(x1) - d0) / std::abs(d0));
      ++counted;
    }
  }
  r.checks.push_back({"invariants/det_constant", worst_rel <= kDetRelTol, kDetRelTol - worst_rel,
                      fmt::format("moves={} nonzero-base moves={} worst relative change={:.3g}", moves, counted,
                                  worst_rel)});
  r.checks.push_back({"invariants/det_sign", flips == 0, -static_cast<double>(flips),
                      fmt::format("moves={} sign changes={}", moves, flips)});
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"dims", "classify", "graph", "witness", "bounds", "floors",
                                             "invariants"};
  return n;
}

SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg) {
  if (name == "dims") return run_dims(cfg);
  if (name == "classify") return run_classify(cfg);
  if (name == "graph") return run_graph(cfg);
  if (name == "witness") return run_witness(cfg);
  if (name == "bounds") return run_bounds(cfg);
  if (name == "floors") return run_floors(cfg);
  if (name == "invariants") return run_invariants(cfg);
  throw ValidationError("unknown suite: " + std::string(name));
}

}  // namespace pb::suite
