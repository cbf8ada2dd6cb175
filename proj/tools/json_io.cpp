#include "pbtool/json_io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

namespace pb::io {

json to_json(cd z) { return json::array({z.real(), z.imag()}); }

json to_json(const Mat2& m) {
  return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                      json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

json to_json(const SymMat2& b) { return {{"a", to_json(b.a)}, {"b", to_json(b.b)}, {"d", to_json(b.d)}}; }

json to_json(const GroupElement& g) { return {{"c", to_json(g.c)}, {"P", to_json(g.P)}}; }

json to_json(const PairAB& x) { return {{"A", to_json(x.A)}, {"B", to_json(x.B)}}; }

json params_to_json(const BundleParams& p) {
  json j = json::object();
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put("theta", p.theta);
  put("tau", p.tau);
  put("phi", p.phi);
  put("a", p.a);
  put("b", p.b);
  put("d", p.d);
  put("beta", p.beta);
  put("delta", p.delta);
  if (p.zeta) j["zeta"] = to_json(*p.zeta);
  if (p.zeta_star) j["zeta_star"] = to_json(*p.zeta_star);
  return j;
}

json to_json(const BundleLabel& l, const BundleParams& p) {
  return {{"label", to_string(l)}, {"params", params_to_json(p)}};
}

json to_json(const Classification& c) {
  json alts = json::array();
  for (const auto& a : c.alternatives) alts.push_back(to_string(a));
  return {{"label", to_string(c.label)},
          {"params", params_to_json(c.params)},
          {"dimension", table_dimension(c.label)},
          {"reducer", to_json(c.reducer)},
          {"residual", c.residual},
          {"ambiguous", c.ambiguous},
          {"alternatives", alts}};
}

json to_json(const WitnessReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back({{"s", p.s}, {"residual", p.residual}});
  return {{"id", r.id},
          {"status", to_string(r.status)},
          {"decreasing", r.decreasing},
          {"final_residual", r.final_residual},
          {"order", r.order},
          {"message", r.message},
          {"points", pts}};
}

json to_json(const NeighborhoodReport& r) {
  json hist = json::object();
  for (const auto& [l, n] : r.histogram) hist[to_string(l)] = n;
  json viol = json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"trial", v.trial}, {"observed", to_string(v.observed)}, {"sample", to_json(v.sample)}});
  return {{"center", to_string(r.center)},
          {"params", params_to_json(r.params)},
          {"epsilon", r.epsilon},
          {"trials", r.trials},
          {"histogram", hist},
          {"ambiguous", r.ambiguous},
          {"errors", r.errors},
          {"violations", viol},
          {"pass", r.pass()}};
}

json to_json(const DistanceResult& d, const BundleLabel& target) {
  return {{"target", to_string(target)},
          {"upper_bound", d.upper_bound},
          {"g", to_json(d.g)},
          {"params", params_to_json(d.params)},
          {"restarts", d.restarts},
          {"evals", d.evals}};
}

json to_json(const GraphExport& g) {
  json nodes = json::array(), edges = json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"dim", n.dim}});
  for (const auto& e : g.edges)
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"provenance", e.provenance}, {"suspect", e.suspect}});
  return {{"nodes", nodes}, {"edges", edges}};
}

json to_json(const suite::SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id}, {"pass", c.pass}, {"margin", c.margin}, {"detail", c.detail}});
  return {{"suite", r.name},
          {"checks", checks.size()},
          {"failures", r.failures()},
          {"pass", r.pass()},
          {"results", checks}};
}

json taxonomy_json() {
  json out = json::array();
  for (const auto& li : taxonomy()) {
    json ps = json::array();
    for (Param p : li.params) ps.push_back(to_string(p));
    json e = {{"label", li.name},
              {"dimension", li.dim},
              {"params", ps},
              {"generic_params", params_to_json(generic_params(li.label))},
              {"rank", json::array({li.rank.lo, li.rank.hi})},
              {"supplementary", li.supplementary}};
    if (!li.note.empty()) e["note"] = li.note;
    out.push_back(e);
  }
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where.empty() ? what : where + ": " + what);
}

double real_from(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite value");
  return v;
}

}  // namespace

cd complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {real_from(j, where), 0.0};
  if (j.is_array() && j.size() == 2) return {real_from(j[0], where + "[0]"), real_from(j[1], where + "[1]")};
  fail(where, "expected a number or [re, im]");
}

Mat2 mat2_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected 2×2");
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 2) fail(where, "expected 2×2");
    for (int c = 0; c < 2; ++c)
      m(r, c) = complex_from(row[static_cast<std::size_t>(c)], fmt::format("{}[{}][{}]", where, r, c));
  }
  return m;
}

SymMat2 sym_from(const json& j, const std::string& where) {
  if (j.is_object()) {
    for (const char* k : {"a", "b", "d"})
      if (!j.contains(k)) fail(where, fmt::format("missing key \"{}\"", k));
    return {complex_from(j["a"], where + ".a"), complex_from(j["b"], where + ".b"), complex_from(j["d"], where + ".d")};
  }
  const Mat2 m = mat2_from(j, where);
  if (std::abs(m(0, 1) - m(1, 0)) > kDefaultRelTol * std::max(1.0, max_norm(m))) fail(where, "matrix is not symmetric");
  return SymMat2::from_matrix(m);
}

GroupElement group_from(const json& j) {
  if (!j.is_object() || !j.contains("P")) fail("", "expected {\"c\": [re, im], \"P\": 2×2}");
  GroupElement g;
  g.c = j.contains("c") ? complex_from(j["c"], "c") : cd(1.0);
  g.P = mat2_from(j["P"], "P");
  validate(g);
  return g;
}

PairAB pair_from(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) fail("", "expected {\"A\": 2×2, \"B\": 2×2 or {a,b,d}}");
  PairAB x{mat2_from(j["A"], "A"), sym_from(j["B"], "B")};
  validate(x);
  return x;
}

BundleParams params_from(const BundleLabel& l, const json& j) {
  if (!j.is_object()) fail("params", "expected an object");
  BundleParams p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const std::string where = "params." + k;
    if (k == "theta") p.theta = real_from(*it, where);
    else if (k == "tau") p.tau = real_from(*it, where);
    else if (k == "phi") p.phi = real_from(*it, where);
    else if (k == "a") p.a = real_from(*it, where);
    else if (k == "b") p.b = real_from(*it, where);
    else if (k == "d") p.d = real_from(*it, where);
    else if (k == "beta") p.beta = real_from(*it, where);
    else if (k == "delta") p.delta = real_from(*it, where);
    else if (k == "zeta") p.zeta = complex_from(*it, where);
    else if (k == "zeta_star") p.zeta_star = complex_from(*it, where);
    else fail(where, "unknown parameter");
  }
  const auto errs = validate_params(l, p);
  if (!errs.empty()) fail("params", errs.front());
  return p;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()));
  }
}

std::string to_csv(const std::vector<suite::SuiteReport>& reports) {
  std::ostringstream os;
  os << "suite,id,pass,margin,detail\n";
  for (const auto& r : reports)
    for (const auto& c : r.checks) {
      std::string d = c.detail;
      std::string quoted = "\"";
      for (char ch : d) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      quoted += "\"";
      os << r.name << ',' << c.id << ',' << (c.pass ? "pass" : "fail") << ',' << fmt::format("{:.17g}", c.margin)
         << ',' << quoted << '\n';
    }
  return os.str();
}

}  // namespace pb::io
