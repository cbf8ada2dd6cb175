#include "pbtool/suites.hpp"

#include <pairbundle/montecarlo.hpp>
#include <pairbundle/witness.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace pb;
using suite::Check;
using suite::SuiteConfig;
using suite::SuiteReport;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::string> failing(const SuiteReport& r) {
  std::vector<std::string> out;
  for (const auto& c : r.checks)
    if (!c.pass) out.push_back(c.id + ": " + c.detail);
  return out;
}

Verdict criterion_dims(const SuiteConfig& cfg) {
  const auto t0 = Clock::now();
  const auto r = suite::run_dims(cfg);
  const double t = seconds_since(t0);
  long cells = 0, cells_ok = 0;
  for (const auto& c : r.checks)
    if (c.id.rfind("dims/psi", 0) != 0) {
      ++cells;
      cells_ok += c.pass;
    }
  Verdict v{r.pass() && t < 10.0,
            fmt::format("{}/{} table cells match at cutoff, x10 and /10; psi2 orbit dims and psi1 dims {}; {:.2f} s "
                        "(limit 10 s)",
                        cells_ok, cells, r.pass() ? "match" : "differ", t),
            failing(r)};
  return v;
}

Verdict criterion_classify(const SuiteConfig& cfg) {
  const auto t0 = Clock::now();
  const auto r = suite::run_classify(cfg);
  const double t = seconds_since(t0);
  const long n = cfg.trials > 0 ? cfg.trials : suite::kClassifyTrials;
  double worst = 0.0;
  for (const auto& c : r.checks) worst = std::max(worst, suite::kParamTol - c.margin);
  return {r.pass() && t < 120.0,
          fmt::format("{} labels x {} conjugations (cond <= 1e3): {} labels with mismatches; worst param error "
                      "{:.2g} (limit 1e-6); {:.2f} s (limit 120 s)",
                      r.checks.size(), n, r.failures(), worst, t),
          failing(r)};
}

Verdict criterion_mc(const SuiteConfig& cfg) {
  const long n = cfg.trials > 0 ? cfg.trials : suite::kMonteCarloTrials;
  long viol = 0, amb = 0, errors = 0, centers = 0;
  std::vector<std::string> details;
  for (const auto& li : taxonomy()) {
    const auto rep = monte_carlo_neighborhood(li.label, generic_params(li.label), cfg.epsilon, n, cfg.seed, cfg.tol);
    ++centers;
    viol += static_cast<long>(rep.violations.size());
    amb += rep.ambiguous;
    errors += rep.errors;
    for (const auto& v : rep.violations)
      details.push_back(fmt::format("{} -> {} (trial {})", li.name, to_string(v.observed), v.trial));
  }
  return {viol == 0 && errors == 0,
          fmt::format("{} centers x {} perturbations at eps={:g}: {} violations; {} ambiguity-flagged samples excluded; "
                      "{} classifier errors",
                      centers, n, cfg.epsilon, viol, amb, errors),
          details};
}

Verdict criterion_witness(const SuiteConfig& cfg) {
  const auto r = suite::run_witness(cfg);
  long refuted = 0, repaired = 0, untyped = 0, slow = 0;
  std::vector<std::string> details;
  for (const auto& c : r.checks) {
    if (c.detail.find("status=refuted") != std::string::npos) ++refuted;
    if (c.detail.find("status=repaired") != std::string::npos) {
      ++repaired;
      details.push_back("repair log " + c.id + ": " + c.detail);
      untyped += c.detail.find("not a known typo") != std::string::npos;
    }
    if (c.detail.find("status=refuted") == std::string::npos && !c.pass) ++slow;
  }
  for (const auto& c : r.checks)
    if (!c.pass) details.push_back(c.id + ": " + c.detail);
  return {r.pass(),
          fmt::format("{} families: {} pass; {} refuted; {} repaired ({} outside the known typos); {} converge but exceed 1e-4 at "
                      "s=1e-3",
                      r.checks.size(), r.checks.size() - static_cast<std::size_t>(r.failures()), refuted, repaired,
                      untyped, slow),
          details};
}

Verdict criterion_bounds(const SuiteConfig& cfg) {
  const auto r = suite::run_bounds(cfg);
  SuiteReport kept{"bounds", {}};
  for (const auto& c : r.checks)
    if (c.id.rfind("bounds/table4", 0) != 0) kept.checks.push_back(c);
  std::string parts;
  for (const auto& c : kept.checks) parts += fmt::format("{} [{}]; ", c.id.substr(7), c.detail);
  parts.resize(parts.size() - 2);
  return {kept.pass(), parts, failing(kept)};
}

Verdict criterion_floors(const SuiteConfig& cfg) {
  const auto r = suite::run_floors(cfg);
  std::string psi2, psi1;
  double psi1_min = 1e300;
  bool psi1_ok = true, contra_ok = true;
  for (const auto& c : r.checks) {
    if (c.id == "floors/psi2/rank2->rank1") psi2 = c.detail;
    if (c.id.rfind("floors/psi1/", 0) == 0 && c.id != "floors/psi1/no_contradiction") {
      psi1_ok = psi1_ok && c.pass;
      psi1_min = std::min(psi1_min, c.margin + suite::kPsi1Floor);
    }
    if (c.id == "floors/psi1/no_contradiction" || (c.id.rfind("floors/psi2/", 0) == 0 && c.id != "floors/psi2/rank2->rank1"))
      contra_ok = contra_ok && c.pass;
  }
  return {r.pass(),
          fmt::format("psi2 rank2->rank1 {}; five psi1 non-edges over {} seeds: min floor {:.4g} ({}); no non-edge "
                      "below 1e-4: {}",
                      psi2, cfg.floor_seeds, psi1_min, psi1_ok ? "> 1e-2" : "below 1e-2", contra_ok ? "yes" : "no"),
          failing(r)};
}

Verdict criterion_invariants(const SuiteConfig& cfg) {
  const auto r = suite::run_invariants(cfg);
  std::string s;
  for (const auto& c : r.checks) s += fmt::format("{} {} [{}]; ", c.id.substr(11), c.pass ? "ok" : "fails", c.detail);
  s.resize(s.size() - 2);
  return {r.pass(), s, failing(r)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict(const SuiteConfig&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria: one PASS/FAIL line per criterion"};
  SuiteConfig cfg;
  std::vector<int> only;
  bool details = false;
  app.add_option("--seed", cfg.seed, "Run seed")->capture_default_str();
  app.add_option("--only", only, "Run only these criteria (1-7)")->check(CLI::Range(1, 7));
  app.add_flag("--details", details, "Print failing checks and the repair log after the verdicts");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, "dimension oracle", criterion_dims},        {2, "classification invariance", criterion_classify},
      {3, "closure-graph soundness", criterion_mc},   {4, "witness suite", criterion_witness},
      {5, "bound inequalities", criterion_bounds},    {6, "non-edge floors", criterion_floors},
      {7, "invariant constancy", criterion_invariants},
  };

  bool ok = true;
  std::vector<std::pair<int, Verdict>> results;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Verdict v = c.run(cfg);
    std::cout << fmt::format("criterion {}: {}: {}: {}", c.id, v.pass ? "PASS" : "FAIL", c.name, v.summary)
              << std::endl;
    ok = ok && v.pass;
    results.emplace_back(c.id, std::move(v));
  }
  if (details)
    for (const auto& [id, v] : results)
      for (const auto& d : v.details) std::cout << fmt::format("  [{}] {}\n", id, d);
  return ok ? 0 : 3;
}
