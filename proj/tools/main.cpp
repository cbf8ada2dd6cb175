#include "pbtool/json_io.hpp"
#include "pbtool/suites.hpp"

#include <pairbundle/dimension.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using pb::io::json;

enum Exit { kOk = 0, kUsage = 1, kAmbiguous = 2, kFailed = 3 };

constexpr const char* kFooter = R"(Exit codes: 0 pass, 1 usage or I/O error, 2 ambiguous classification, 3 verification failure.

Randomness: every sampling loop derives its own generator from the run seed as
  mt19937_64(seed_seq(splitmix64(seed ^ fnv1a(stream) ^ splitmix64(index))))
where stream names the loop (e.g. "mc/<label>", "classify/<label>", "lemadet/PAE",
"dist/<label>") and index is the trial or restart number. Reports therefore do not
depend on execution order; equal options give identical output.)";

struct Globals {
  std::uint64_t seed = pb::kDefaultSeed;
  double tol = 1.0;
  std::string output;
  std::string input;
};

pb::ToleranceConfig tolerances(const Globals& g) {
  pb::ToleranceConfig t;
  if (g.tol != 1.0) t = t.scaled(g.tol);
  t.validate();
  return t;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Globals& g, const std::string& text) {
  if (g.output.empty() || g.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot write " + g.output);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit(const Globals& g, const json& j) { emit(g, j.dump(2)); }

pb::BundleLabel label_arg(const std::string& s) {
  auto l = pb::parse_label(s);
  if (!l || !pb::is_catalogued(*l)) throw pb::ValidationError("unknown label: " + s);
  return *l;
}

pb::BundleParams params_arg(const pb::BundleLabel& l, const std::string& text) {
  if (text.empty()) return pb::generic_params(l);
  return pb::canonicalize_params(l, pb::io::params_from(l, pb::io::parse_document(text)));
}

pb::WitnessFamily family_arg(const std::string& s) {
  if (auto f = pb::witness_by_id(s)) return *f;
  const auto arrow = s.find("->");
  if (arrow != std::string::npos) {
    const auto src = label_arg(s.substr(0, arrow));
    const auto dst = label_arg(s.substr(arrow + 2));
    if (auto f = pb::witness_lookup(src, dst)) return *f;
    throw pb::ValidationError("no catalogued family for " + s);
  }
  throw pb::ValidationError("unknown witness family: " + s);
}

json ambiguity_doc(const pb::AmbiguityError& e) {
  return {{"ambiguous", true}, {"message", e.what()}, {"candidates", e.candidates()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbundle: normal forms, closure graph and numerical checks for pairs (A, B) of 2x2 complex matrices"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Run seed")->capture_default_str();
  app.add_option("--tol", g.tol, "Factor applied to every classification tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "Write the report to this file instead of stdout");

  int rc = kOk;

  // classify
  auto* classify = app.add_subcommand("classify", "Classify a pair read as JSON from --input or stdin");
  classify->add_option("-i,--input", g.input, "Input file ('-' for stdin)");
  classify->callback([&] {
    const auto x = pb::io::pair_from(pb::io::parse_document(read_input(g.input)));
    try {
      const auto c = pb::classify_pair(x, tolerances(g));
      emit(g, pb::io::to_json(c));
      if (c.ambiguous) rc = kAmbiguous;
    } catch (const pb::AmbiguityError& e) {
      emit(g, ambiguity_doc(e));
      rc = kAmbiguous;
    }
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Reduce a pair to its normal form and report the group element");
  reduce->add_option("-i,--input", g.input, "Input file ('-' for stdin)");
  reduce->callback([&] {
    const auto x = pb::io::pair_from(pb::io::parse_document(read_input(g.input)));
    try {
      const auto c = pb::classify_pair(x, tolerances(g));
      const auto nf = pb::representative(c.label, c.params);
      json j = pb::io::to_json(c.label, c.params);
      j["reducer"] = pb::io::to_json(c.reducer);
      j["normal_form"] = pb::io::to_json(nf);
      j["reduction_residual"] = pb::pair_distance(pb::apply_action(c.reducer, x), nf);
      j["ambiguous"] = c.ambiguous;
      emit(g, j);
      if (c.ambiguous) rc = kAmbiguous;
    } catch (const pb::AmbiguityError& e) {
      emit(g, ambiguity_doc(e));
      rc = kAmbiguous;
    }
  });

  // dim
  std::string dim_label, dim_params;
  auto* dim = app.add_subcommand("dim", "Numerical tangent-rank dimension of a bundle");
  dim->add_option("label", dim_label, "Bundle label, e.g. one_theta/anti_diag")->required();
  dim->add_option("--params", dim_params, "Parameters as a JSON object (default: generic values)");
  dim->callback([&] {
    const auto l = label_arg(dim_label);
    const auto p = params_arg(l, dim_params);
    const auto rep = pb::dimension_report(l, p);
    json j = pb::io::to_json(l, p);
    j["dimension"] = rep.rank;
    j["table_dimension"] = pb::table_dimension(l);
    j["rank_cutoff_div10"] = rep.rank_tight;
    j["rank_cutoff_x10"] = rep.rank_loose;
    j["stable"] = rep.stable();
    j["singular_values"] = rep.singular_values;
    emit(g, j);
    if (!rep.stable() || rep.rank != pb::table_dimension(l)) rc = kFailed;
  });

  // closure
  auto* closure = app.add_subcommand("closure", "Closure-graph queries");
  closure->require_subcommand(1);
  std::string c_src, c_dst, c_label, c_graph = "psi", c_format = "json";
  auto* path = closure->add_subcommand("path", "Is SRC in the closure of DST's bundle");
  path->add_option("src", c_src)->required();
  path->add_option("dst", c_dst)->required();
  path->callback([&] {
    const auto& graph = pb::ClosureGraph::get();
    const auto s = label_arg(c_src), d = label_arg(c_dst);
    const bool p = graph.is_path(s, d);
    json j = {{"src", pb::to_string(s)}, {"dst", pb::to_string(d)}, {"path", p}};
    if (p && graph.only_via_suspect(s, d)) j["warning"] = "every path uses an edge from a suspect diagram cell";
    emit(g, j);
  });
  auto* succ = closure->add_subcommand("successors", "Labels reachable from L");
  succ->add_option("label", c_label)->required();
  succ->callback([&] {
    const auto l = label_arg(c_label);
    json out = json::array();
    for (const auto& s : pb::ClosureGraph::get().successors(l)) out.push_back(pb::to_string(s));
    emit(g, json{{"label", pb::to_string(l)}, {"successors", out}});
  });
  auto* pred = closure->add_subcommand("predecessors", "Labels that reach L");
  pred->add_option("label", c_label)->required();
  pred->callback([&] {
    const auto l = label_arg(c_label);
    json out = json::array();
    for (const auto& s : pb::ClosureGraph::get().predecessors(l)) out.push_back(pb::to_string(s));
    emit(g, json{{"label", pb::to_string(l)}, {"predecessors", out}});
  });
  auto* exp = closure->add_subcommand("export", "Transitively reduced graph as JSON or DOT");
  exp->add_option("--graph", c_graph, "psi1, psi2 or psi")
      ->check(CLI::IsMember({"psi1", "psi2", "psi"}))
      ->capture_default_str();
  exp->add_option("--format", c_format, "json or dot")->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
  exp->callback([&] {
    const auto kind = c_graph == "psi1" ? pb::GraphKind::Psi1
                      : c_graph == "psi2" ? pb::GraphKind::Psi2
                                          : pb::GraphKind::Psi;
    const auto ge = pb::export_graph(kind);
    if (c_format == "dot")
      emit(g, pb::to_dot(ge, c_graph));
    else
      emit(g, pb::io::to_json(ge));
  });

  // witness
  auto* witness = app.add_subcommand("witness", "Degeneration families certifying closure edges");
  witness->require_subcommand(1);
  std::string w_id;
  double w_s = 1e-3;
  int w_points = 12;
  auto* wlist = witness->add_subcommand("list", "Catalogued families");
  wlist->callback([&] {
    json out = json::array();
    for (const auto& f : pb::witness_catalog())
      out.push_back({{"id", f.id},
                     {"source", pb::to_string(f.source)},
                     {"target", pb::to_string(f.target)},
                     {"known_typo", f.known_typo},
                     {"status", pb::to_string(f.status)},
                     {"provenance", f.provenance}});
    emit(g, out);
  });
  auto* weval = witness->add_subcommand("eval", "Evaluate a family at one s");
  weval->add_option("family", w_id, "Family id (e.g. W3) or SRC->DST")->required();
  weval->add_option("--s", w_s, "Curve parameter")->capture_default_str();
  weval->callback([&] {
    const auto f = family_arg(w_id);
    const auto e = pb::witness_eval(f, w_s);
    emit(g, json{{"id", f.id},
                 {"s", w_s},
                 {"g", pb::io::to_json(e.g)},
                 {"image", pb::io::to_json(e.image)},
                 {"source", pb::io::to_json(f.source_pair())},
                 {"residual", e.residual}});
  });
  auto* wver = witness->add_subcommand("verify", "Check convergence along a geometric grid");
  wver->add_option("family", w_id, "Family id (e.g. W3) or SRC->DST")->required();
  wver->add_option("--points", w_points, "Grid length")->check(CLI::Range(2, 60))->capture_default_str();
  wver->callback([&] {
    const auto f = family_arg(w_id);
    const auto rep = pb::witness_verify(f, pb::geometric_grid(f.s_max, w_points));
    json j = pb::io::to_json(rep);
    j["provenance"] = f.provenance;
    emit(g, j);
    if (rep.status != pb::WitnessStatus::Verified) rc = kFailed;
  });
  auto* wrep = witness->add_subcommand("repair", "Search the correction space for a converging variant");
  wrep->add_option("family", w_id, "Family id (e.g. W3) or SRC->DST")->required();
  wrep->callback([&] {
    const auto f = family_arg(w_id);
    const auto rr = pb::witness_repair(f);
    json j = pb::io::to_json(rr.report);
    j["changed"] = rr.changed;
    j["correction"] = rr.family.correction.describe();
    j["known_typo"] = f.known_typo;
    j["provenance"] = rr.family.provenance;
    emit(g, j);
    if (rr.report.status == pb::WitnessStatus::Refuted) rc = kFailed;
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string v_suite = "all", v_format = "json";
  long v_trials = -1;
  double v_eps = 1e-3;
  int v_budget = 32;
  std::vector<std::string> names = pb::suite::suite_names();
  names.push_back("all");
  verify->add_option("suite,--suite", v_suite, "dims, classify, graph, witness, bounds, floors, invariants or all")
      ->check(CLI::IsMember(names))
      ->capture_default_str();
  verify->add_option("--trials", v_trials, "Samples per check (default: per-suite)");
  verify->add_option("--epsilon", v_eps, "Monte Carlo radius")->check(CLI::Range(1e-12, 0.1))->capture_default_str();
  verify->add_option("--budget", v_budget, "Optimizer restarts")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--format", v_format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  verify->callback([&] {
    if (v_trials == 0 || v_trials < -1) throw CLI::ValidationError("--trials", "must be >= 1");
    pb::suite::SuiteConfig cfg;
    cfg.seed = g.seed;
    cfg.trials = v_trials > 0 ? v_trials : 0;
    cfg.epsilon = v_eps;
    cfg.budget = v_budget;
    cfg.tol = tolerances(g);
    std::vector<pb::suite::SuiteReport> reports;
    if (v_suite == "all")
      for (const auto& n : pb::suite::suite_names()) reports.push_back(pb::suite::run_suite(n, cfg));
    else
      reports.push_back(pb::suite::run_suite(v_suite, cfg));
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.pass();
    if (v_format == "csv") {
      emit(g, pb::io::to_csv(reports));
    } else {
      json suites = json::array();
      long checks = 0, failures = 0;
      for (const auto& r : reports) {
        suites.push_back(pb::io::to_json(r));
        checks += static_cast<long>(r.checks.size());
        failures += r.failures();
      }
      emit(g, json{{"seed", g.seed}, {"pass", ok}, {"checks", checks}, {"failures", failures}, {"suites", suites}});
    }
    if (!ok) rc = kFailed;
  });

  // dist
  auto* dist = app.add_subcommand("dist", "Upper bound on the distance from a pair to a bundle");
  std::string d_target;
  int d_budget = 32;
  dist->add_option("-i,--input", g.input, "Input pair file ('-' for stdin)");
  dist->add_option("--target", d_target, "Target bundle label")->required();
  dist->add_option("--budget", d_budget, "Random restarts")->check(CLI::PositiveNumber)->capture_default_str();
  dist->callback([&] {
    const auto x = pb::io::pair_from(pb::io::parse_document(read_input(g.input)));
    const auto target = label_arg(d_target);
    pb::SearchOptions o;
    o.restarts = d_budget;
    o.seed = g.seed;
    emit(g, pb::io::to_json(pb::distance_to_bundle(x, target, o), target));
  });

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo neighbourhood of a bundle representative");
  std::string m_label, m_params;
  long m_trials = 1000;
  double m_eps = 1e-3;
  mc->add_option("label", m_label, "Center label")->required();
  mc->add_option("--params", m_params, "Center parameters as JSON (default: generic values)");
  mc->add_option("--trials", m_trials, "Number of samples")->check(CLI::PositiveNumber)->capture_default_str();
  mc->add_option("--epsilon", m_eps, "Polydisc radius")->check(CLI::Range(1e-12, 0.1))->capture_default_str();
  mc->callback([&] {
    const auto l = label_arg(m_label);
    const auto rep = pb::monte_carlo_neighborhood(l, params_arg(l, m_params), m_eps, m_trials, g.seed, tolerances(g));
    emit(g, pb::io::to_json(rep));
    if (!rep.pass()) rc = kFailed;
  });

  // taxonomy
  auto* tax = app.add_subcommand("taxonomy", "All bundle labels with dimensions and parameters");
  tax->callback([&] { emit(g, pb::io::taxonomy_json()); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const pb::AmbiguityError& e) {
    std::cerr << "ambiguous: " << e.what() << '\n';
    return kAmbiguous;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return rc;
}
