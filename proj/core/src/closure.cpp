#include "pairbundle/closure.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pb {

namespace {

constexpr int kA = 8;

using AL = ALabel;

const std::vector<std::pair<AL, AL>>& psi1_gens() {
  static const std::vector<std::pair<AL, AL>> g = {
      {AL::Zero, AL::OneZero},         {AL::OneZero, AL::Identity}, {AL::OneZero, AL::OnePlusMinus},
      {AL::OneZero, AL::Nilpotent},    {AL::Identity, AL::OneTheta}, {AL::OnePlusMinus, AL::JordanI},
      {AL::Nilpotent, AL::TauForm},    {AL::JordanI, AL::OneTheta},  {AL::JordanI, AL::TauForm},
  };
  return g;
}

const std::vector<std::vector<char>>& psi1_reach() {
  static const auto r = [] {
    std::vector<std::vector<char>> m(kA, std::vector<char>(kA, 0));
    for (int i = 0; i < kA; ++i) m[i][i] = 1;
    for (auto [s, d] : psi1_gens()) m[static_cast<int>(s)][static_cast<int>(d)] = 1;
    for (int k = 0; k < kA; ++k)
      for (int i = 0; i < kA; ++i)
        for (int j = 0; j < kA; ++j)
          if (m[i][k] && m[k][j]) m[i][j] = 1;
    return m;
  }();
  return r;
}

struct RawEdge {
  const char* src;
  const char* dst;
  const char* printed;
  bool suspect;
};

// Arrows of the printed closure diagram, transcribed cell by cell.
// Cells whose text is truncated or duplicated carry the suspect flag.
const std::vector<RawEdge>& diagram_edges() {
  static const std::vector<RawEdge> e = {
      {"identity/diag_ad", "one_theta/off_diag_plus_a", "I2,a+d -> 1+e^{it},[[a,b],[b,0]]", false},
      {"identity/diag_ad", "one_theta/off_diag_plus_d", "I2,a+d -> 1+e^{it},[[0,b],[b,d]]", false},
      {"identity/diag_ad", "one_theta/diag_ad", "I2,a+d -> 1+e^{it},a+d", false},
      {"one_plus_minus/diag_ad", "one_theta/off_diag_plus_d", "1+-1,a+d -> 1+e^{it},[[0,b],[b,d]]", false},
      {"one_plus_minus/diag_ad", "one_theta/off_diag_plus_a", "1+-1,a+d -> 1+e^{it},[[a,b],[b,0]]", false},
      {"one_plus_minus/diag_ad", "one_theta/diag_ad", "1+-1,a+d -> 1+e^{it},a+d", false},
      {"one_plus_minus/x_one_xi", "jordan_i/diag_a_zeta", "[[0,1],[1,0]],1+xi -> [[0,1],[1,i]],1+zeta", false},
      {"one_zero/diag_a1", "one_theta/off_diag_plus_d", "1+0,a+1 -> 1+e^{it},[[0,b],[b,d]]", false},
      {"one_zero/diag_a1", "one_theta/off_diag_plus_a", "1+0,a+1 -> 1+e^{it},[[a,b],[b,0]]", false},
      {"one_theta/anti_diag", "one_theta/off_diag_plus_a", "1+e^{it},[[0,b],[b,0]] -> 1+e^{it},[[a,b],[b,0]]",
       false},
      {"one_theta/anti_diag", "one_theta/off_diag_plus_d", "1+e^{it},[[0,b],[b,0]] -> 1+e^{it},[[0,b],[b,d]]",
       false},
      {"one_theta/diag_a0", "one_theta/off_diag_plus_a", "1+e^{it},a+0 -> 1+e^{it},[[a,b],[b,0]]", false},
      {"one_theta/diag_0d", "one_theta/off_diag_plus_d", "1+e^{it},0+d -> 1+e^{it},[[0,b],[b,d]]", false},
      {"jordan_i/anti_diag", "jordan_i/diag_a_zeta", "[[0,1],[1,i]],[[0,b],[b,0]] -> [[0,1],[1,i]],1+zeta", false},
      {"jordan_i/anti_diag", "one_theta/off_diag_plus_d",
       "[[0,1],[1,i]],[[0,b],[b,0]] -> 1+e^{it},[[0,b],[b,d]]", false},
      {"jordan_i/anti_diag", "one_theta/off_diag_plus_a",
       "[[0,1],[1,i]],[[0,b],[b,0]] -> 1+e^{it},[[a,b],[b,0]]", false},
      {"one_plus_minus/x_off_diag_b1", "jordan_i/diag_a_zeta",
       "[[0,1],[1,0]],[[0,b],[b,1]] -> [[0,1],[1,i]],1+zeta", false},
      {"one_plus_minus/x_off_diag_b1", "one_plus_minus/diag_ad", "[[0,1],[1,0]],[[0,b],[b,1]] -> 1+-1,a+d", false},
      {"one_theta/zero", "one_theta/diag_a0", "1+e^{it},0 -> 1+e^{it},a+0", false},
      {"one_theta/zero", "one_theta/anti_diag", "1+e^{it},0 -> 1+e^{it},[[0,b],[b,0]]", false},
      {"one_theta/zero", "one_theta/diag_0d", "1+e^{it},0 -> 1+e^{it},0+d", false},
      {"one_plus_minus/diag_0d", "one_theta/diag_a0", "1+-1,0+d -> 1+e^{it},a+0", false},
      {"one_plus_minus/diag_0d", "one_theta/diag_0d", "1+-1,0+d -> 1+e^{it},0+d", false},
      {"one_plus_minus/diag_0d", "one_plus_minus/diag_ad", "1+-1,0+d -> 1+-1,a+d", false},
      {"one_plus_minus/scalar", "jordan_i/anti_diag", "1+-1,dI2 -> [[0,1],[1,i]],[[0,b],[b,0]]", false},
      {"one_plus_minus/scalar", "one_plus_minus/x_one_xi", "1+-1,dI2 -> [[0,1],[1,0]],1+xi", false},
      {"one_plus_minus/scalar", "one_plus_minus/diag_ad", "1+-1,dI2 -> 1+-1,a+d", false},
      {"one_plus_minus/scalar", "one_plus_minus/x_off_diag_b1", "1+-1,dI2 -> [[0,1],[1,0]],[[0,b],[b,1]]", false},
      {"identity/diag_0d", "identity/diag_ad", "I2,0+d -> I2,a+d", false},
      {"identity/diag_0d", "one_theta/anti_diag", "I2,0+d -> 1+e^{it},[[0,b],[b,0]]", false},
      {"identity/scalar", "one_theta/anti_diag", "I2,0+dI2 (garbled cell read as dI2) -> 1+e^{it},[[0,b],[b,0]]",
       true},
      {"identity/scalar", "identity/diag_ad", "I2,0+dI2 (garbled cell read as dI2) -> I2,a+d", true},
      {"jordan_i/diag_0d", "jordan_i/anti_diag", "[[0,1],[1,i]],0+d -> [[0,1],[1,i]],[[0,b],[b,0]]", false},
      {"jordan_i/diag_0d", "one_theta/diag_0d", "[[0,1],[1,i]],0+d -> 1+e^{it},0+d", false},
      {"one_plus_minus/anti_diag", "one_plus_minus/x_one_xi", "1+-1,[[0,b],[b,0]] -> [[0,1],[1,0]],1+xi", false},
      {"one_zero/diag_01", "identity/diag_0d", "1+0,0+1 -> I2,0+d", false},
      {"one_zero/diag_01", "one_zero/diag_a1", "1+0,0+1 -> 1+0,a+1", false},
      {"one_plus_minus/x_diag_10", "one_plus_minus/x_off_diag_b1",
       "[[0,1],[1,0]],1+0 -> [[0,1],[1,0]],[[0,b],[b,1]]", false},
      {"one_plus_minus/x_diag_10", "jordan_i/diag_0d", "[[0,1],[1,0]],1+0 -> [[0,1],[1,i]],0+d", false},
      {"one_plus_minus/x_diag_10", "one_plus_minus/anti_diag", "[[0,1],[1,0]],1+0 -> 1+-1,[[0,b],[b,0]]", false},
      {"one_plus_minus/x_diag_10", "one_plus_minus/x_one_xi", "[[0,1],[1,0]],1+0 -> [[0,1],[1,0]],1+xi", false},
      {"jordan_i/zero", "jordan_i/diag_0d", "[[0,1],[1,i]],0 -> [[0,1],[1,i]],0+d", false},
      {"jordan_i/zero", "one_theta/zero", "[[0,1],[1,i]],0 -> 1+e^{it},0", false},
      {"nilpotent/one_b_0", "nilpotent/zeta_star_b1", "[[0,1],[0,0]],[[1,b],[b,0]] -> [[0,1],[0,0]],[[z*,b],[b,1]]",
       false},
      {"tau_form/diag_01", "tau_form/off_diag_phase", "[[0,1],[t,0]],0+1 -> [[0,1],[t,0]],[[0,b],[b,e^{ip}]]",
       false},
      {"tau_form/diag_01", "jordan_i/diag_a_zeta", "[[0,1],[t,0]],0+1 -> [[0,1],[1,i]],1+zeta", false},
      {"one_plus_minus/x_off_diag_b1", "tau_form/off_diag_phase",
       "[[0,1],[1,0]],[[0,b],[b,1]] -> [[0,1],[t,0]],[[0,b],[b,e^{ip}]]", false},
      {"nilpotent/off_diag_b1", "tau_form/off_diag_phase",
       "[[0,1],[0,0]],[[0,b],[b,1]] -> [[0,1],[t,0]],[[0,b],[b,e^{ip}]]", false},
      {"nilpotent/off_diag_b1", "nilpotent/zeta_star_b1",
       "[[0,1],[0,0]],[[0,b],[b,1]] -> [[0,1],[0,0]],[[z*,b],[b,1]]", false},
      {"nilpotent/diag_a1", "nilpotent/zeta_star_b1", "[[0,1],[0,0]],a+1 -> [[0,1],[0,0]],[[z*,b],[b,1]]", false},
      {"nilpotent/diag_a1", "jordan_i/diag_a_zeta", "[[0,1],[0,0]],a+1 -> [[0,1],[1,i]],1+zeta", false},
      {"tau_form/anti_diag", "tau_form/off_diag_phase",
       "[[0,1],[t,0]],[[0,b],[b,0]] -> [[0,1],[t,0]],[[0,b],[b,e^{ip}]] (arrow printed twice)", false},
      {"tau_form/anti_diag", "nilpotent/zeta_star_b1",
       "[[0,1],[t,0]],[[0,b],[b,0]] -> [[0,1],[0,0]],[[z*,b],[b,1]]", false},
      {"jordan_i/diag_0d", "tau_form/diag_01", "[[0,1],[1,i]],0+d -> [[0,1],[t,0]],0+1", false},
      {"nilpotent/diag_10", "nilpotent/one_b_0", "[[0,1],[0,0]],1+0 -> [[0,1],[0,0]],[[1,b],[b,0]]", false},
      {"nilpotent/diag_10", "nilpotent/off_diag_b1", "[[0,1],[0,0]],1+0 -> [[0,1],[0,0]],[[0,b],[b,1]]", false},
      {"nilpotent/diag_10", "nilpotent/diag_a1", "[[0,1],[0,0]],1+0 -> [[0,1],[0,0]],a+1", false},
      {"nilpotent/anti_diag", "nilpotent/one_b_0", "[[0,1],[0,0]],[[0,b],[b,0]] -> [[0,1],[0,0]],[[1,b],[b,0]]",
       false},
      {"nilpotent/anti_diag", "nilpotent/off_diag_b1",
       "[[0,1],[0,0]],[[0,b],[b,0]] -> [[0,1],[0,0]],[[0,b],[b,1]]", false},
      {"nilpotent/anti_diag", "tau_form/anti_diag", "[[0,1],[0,0]],[[0,b],[b,0]] -> [[0,1],[t,0]],[[0,b],[b,0]]",
       false},
      {"nilpotent/diag_01", "nilpotent/off_diag_b1",
       "[[0,1],[0,0]],0+ (truncated cell read as 0+1) -> [[0,1],[0,0]],[[0,b],[b,1]]", true},
      {"nilpotent/diag_01", "nilpotent/diag_a1", "[[0,1],[0,0]],0+ (truncated cell read as 0+1) -> [[0,1],[0,0]],a+1",
       true},
      {"nilpotent/zero", "tau_form/diag_01", "[[0,1],[0,0]],0 -> [[0,1],[t,0]],0+1", false},
      {"nilpotent/zero", "tau_form/anti_diag", "[[0,1],[0,0]],0 -> [[0,1],[t,0]],[[0,b],[b,0]]", false},
      {"nilpotent/zero", "nilpotent/zero", "[[0,1],[0,0]],0 (duplicated node) -> [[0,1],[0,0]],0", true},
      {"nilpotent/zero", "one_plus_minus/x_diag_10", "[[0,1],[0,0]],0 (duplicated node) -> [[0,1],[1,0]],1+0", true},
      {"nilpotent/zero", "nilpotent/diag_01", "[[0,1],[0,0]],0 (duplicated node) -> [[0,1],[0,0]],0+", true},
      {"nilpotent/zero", "nilpotent/anti_diag", "[[0,1],[0,0]],0 (duplicated node) -> [[0,1],[0,0]],[[0,b],[b,0]]",
       true},
  };
  return e;
}

BundleLabel L(const char* s) {
  auto l = parse_label(s);
  if (!l) throw std::logic_error(std::string("unknown label in graph data: ") + s);
  return *l;
}

}  // namespace

bool is_path_psi2(BLabel src, BLabel dst) { return b_rank(src) <= b_rank(dst); }

bool is_path_psi1(ALabel src, ALabel dst) {
  return psi1_reach()[static_cast<int>(src)][static_cast<int>(dst)] != 0;
}

std::vector<std::pair<ALabel, ALabel>> psi1_generators() { return psi1_gens(); }

const ClosureGraph& ClosureGraph::get() {
  static const ClosureGraph g;
  return g;
}

int ClosureGraph::index(const BundleLabel& l) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), l);
  if (it == nodes_.end()) throw ValidationError("label not in the taxonomy: " + to_string(l));
  return static_cast<int>(it - nodes_.begin());
}

ClosureGraph::ClosureGraph() {
  for (const auto& li : taxonomy()) nodes_.push_back(li.label);
  const int n = static_cast<int>(nodes_.size());

  std::vector<GraphEdge> cand;
  auto add = [&](const BundleLabel& s, const BundleLabel& d, std::string prov, bool suspect) {
    cand.push_back({s, d, std::move(prov), suspect});
  };

  // Universal sources and universal targets.
  auto rule_from = [&](const BundleLabel& src, const std::string& name, auto excluded) {
    for (const auto& li : taxonomy())
      if (!(li.label == src) && !excluded(li)) add(src, li.label, "rule: universal source " + name, false);
  };
  auto a_zero = [](const LabelInfo& li) { return li.label.a == ALabel::Zero; };
  auto b_zero = [](const LabelInfo& li) { return li.label.b == BShape::Zero; };
  auto singular_b = [](const LabelInfo& li) { return li.rank.hi <= 1; };
  rule_from({ALabel::Zero, BShape::Zero}, "(0,0)", [](const LabelInfo&) { return false; });
  rule_from({ALabel::OneZero, BShape::Zero}, "(1+0,0), except (0,B)", a_zero);
  rule_from({ALabel::OneZero, BShape::DiagA0}, "(1+0,a+0), except (0,B) and (A,0)",
            [&](const LabelInfo& li) { return a_zero(li) || b_zero(li); });
  rule_from({ALabel::Zero, BShape::Rank1}, "(0,1+0), except (A,0)", b_zero);
  rule_from({ALabel::Zero, BShape::Rank2}, "(0,I2), except singular B", singular_b);
  rule_from({ALabel::OneZero, BShape::Swap}, "(1+0,[[0,1],[1,0]]), except (0,B) and singular B",
            [&](const LabelInfo& li) { return a_zero(li) || singular_b(li); });
  for (const auto& li : taxonomy()) {
    const ALabel a = li.label.a;
    const BundleLabel tau_top{ALabel::TauForm, BShape::PhaseForm};
    const BundleLabel theta_top{ALabel::OneTheta, BShape::FullHermitianLike};
    if (a != ALabel::OneTheta && a != ALabel::Identity && !(li.label == tau_top))
      add(li.label, tau_top, "rule: universal target tau_form/phase_form, except (1+e^{it},B) for 0<=t<pi", false);
    if (a != ALabel::TauForm && a != ALabel::Nilpotent && !(li.label == theta_top))
      add(li.label, theta_top, "rule: universal target one_theta/full_hermitian_like, except ([[0,1],[t,0]],B)",
          false);
  }

  // Supplementary strata have no printed node: (A~,B~) -> (A, generic B) when A~ -> A
  // and the A-fiber has a single open B-stratum.
  for (const auto& top : taxonomy()) {
    const ALabel a = top.label.a;
    if (!top.supplementary || top.dim != a_bundle_dimension(a) + 6) continue;
    const auto open_strata = std::count_if(taxonomy().begin(), taxonomy().end(), [&](const LabelInfo& li) {
      return li.label.a == a && li.dim == a_bundle_dimension(a) + 6;
    });
    if (open_strata != 1) continue;
    for (const auto& li : taxonomy())
      if (!(li.label == top.label) && is_path_psi1(li.label.a, a))
        add(li.label, top.label, "rule: open stratum " + top.name + " over the A-only closure", false);
  }

  // (A~,0) -> (A,0) iff A~ -> A, and (0,B~) -> (0,B) iff B~ -> B.
  for (auto [s, d] : psi1_gens())
    add({s, BShape::Zero}, {d, BShape::Zero}, "lift of the A-only closure graph with B = 0", false);
  add({ALabel::Zero, BShape::Zero}, {ALabel::Zero, BShape::Rank1}, "lift of the rank chain with A = 0", false);
  add({ALabel::Zero, BShape::Rank1}, {ALabel::Zero, BShape::Rank2}, "lift of the rank chain with A = 0", false);

  for (const auto& r : diagram_edges())
    add(L(r.src), L(r.dst), std::string("diagram arrow: ") + r.printed, r.suspect);

  add(L("one_plus_minus/zero"), L("one_plus_minus/x_diag_10"),
      "degeneration family (1+-1,0) -> ([[0,1],[1,0]],1+0) from the proof case analysis", false);

  add(L("jordan_i/diag_a_zeta"), L("jordan_i/sym_a_beta_zeta"), "supplementary stratum: beta -> 0 degeneration",
      false);
  add(L("jordan_i/anti_diag"), L("jordan_i/off_diag_delta"), "supplementary stratum: delta -> 0 degeneration",
      false);
  add(L("jordan_i/off_diag_delta"), L("jordan_i/sym_a_beta_zeta"), "supplementary stratum: a -> 0 degeneration",
      false);

  // Merge duplicates, then filter.
  std::map<std::pair<int, int>, GraphEdge> merged;
  for (auto& e : cand) {
    const auto key = std::make_pair(index(e.src), index(e.dst));
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, e);
    } else {
      if (it->second.provenance.find(e.provenance) == std::string::npos)
        it->second.provenance += "; " + e.provenance;
      it->second.suspect = it->second.suspect && e.suspect;
    }
  }
  for (auto& [key, e] : merged) {
    const auto& si = label_info(e.src);
    const auto& di = label_info(e.dst);
    std::string reason;
    if (key.first == key.second)
      reason = "self loop";
    else if (!is_path_psi1(e.src.a, e.dst.a))
      reason = "A-projection " + to_string(e.src.a) + " -> " + to_string(e.dst.a) + " is not a path";
    else if (di.rank.pure() && si.rank.hi > di.rank.lo)
      reason = "B-rank " + std::to_string(si.rank.hi) + " cannot degenerate to rank " + std::to_string(di.rank.lo);
    else if (si.dim >= di.dim)
      reason = "dimension does not increase (" + std::to_string(si.dim) + " -> " + std::to_string(di.dim) + ")";
    if (reason.empty())
      kept_.push_back(e);
    else
      dropped_.push_back({e, reason});
  }

  auto closure = [&](bool skip_suspect) {
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    for (const auto& e : kept_)
      if (!(skip_suspect && e.suspect)) m[index(e.src)][index(e.dst)] = 1;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (m[i][k])
          for (int j = 0; j < n; ++j)
            if (m[k][j]) m[i][j] = 1;
    return m;
  };
  reach_ = closure(false);
  reach_clean_ = closure(true);
}

bool ClosureGraph::is_path(const BundleLabel& src, const BundleLabel& dst) const {
  return reach_[index(src)][index(dst)] != 0;
}

bool ClosureGraph::only_via_suspect(const BundleLabel& src, const BundleLabel& dst) const {
  const int i = index(src), j = index(dst);
  return reach_[i][j] && !reach_clean_[i][j];
}

std::vector<BundleLabel> ClosureGraph::successors(const BundleLabel& l) const {
  std::vector<BundleLabel> out;
  const int i = index(l);
  for (std::size_t j = 0; j < nodes_.size(); ++j)
    if (reach_[i][j]) out.push_back(nodes_[j]);
  return out;
}

std::vector<BundleLabel> ClosureGraph::predecessors(const BundleLabel& l) const {
  std::vector<BundleLabel> out;
  const int j = index(l);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (reach_[i][j]) out.push_back(nodes_[i]);
  return out;
}

std::vector<GraphEdge> ClosureGraph::reduced_edges() const {
  const int n = static_cast<int>(nodes_.size());
  std::map<std::pair<int, int>, const GraphEdge*> gen;
  for (const auto& e : kept_) gen[{index(e.src), index(e.dst)}] = &e;
  std::vector<GraphEdge> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !reach_[i][j]) continue;
      bool covered = false;
      for (int k = 0; k < n && !covered; ++k)
        if (k != i && k != j && reach_[i][k] && reach_[k][j]) covered = true;
      if (covered) continue;
      auto it = gen.find({i, j});
      if (it != gen.end())
        out.push_back(*it->second);
      else
        out.push_back({nodes_[i], nodes_[j], "implied by transitivity", false});
    }
  return out;
}

GraphExport export_graph(GraphKind kind) {
  GraphExport g;
  switch (kind) {
    case GraphKind::Psi2: {
      const int dims[] = {0, 2, 3};
      for (int r = 0; r < 3; ++r) g.nodes.push_back({to_string(b_label_of_rank(r)), dims[r]});
      g.edges.push_back({"zero", "rank1", "rank chain 0 -> 1+0", false});
      g.edges.push_back({"rank1", "rank2", "rank chain 1+0 -> I2", false});
      break;
    }
    case GraphKind::Psi1: {
      for (int a = 0; a < kA; ++a) {
        const auto al = static_cast<ALabel>(a);
        g.nodes.push_back({to_string(al), a_bundle_dimension(al)});
      }
      for (auto [s, d] : psi1_gens()) g.edges.push_back({to_string(s), to_string(d), "A-only closure arrow", false});
      break;
    }
    case GraphKind::Psi: {
      const auto& cg = ClosureGraph::get();
      for (const auto& l : cg.nodes()) g.nodes.push_back({to_string(l), table_dimension(l)});
      for (const auto& e : cg.reduced_edges())
        g.edges.push_back({to_string(e.src), to_string(e.dst), e.provenance, e.suspect});
      break;
    }
  }
  return g;
}

std::string to_dot(const GraphExport& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=BT;\n";
  std::map<int, std::vector<std::string>> by_dim;
  for (const auto& n : g.nodes) {
    os << "  \"" << n.id << "\" [label=\"" << n.id << "\\n" << n.dim << "\"];\n";
    by_dim[n.dim].push_back(n.id);
  }
  for (const auto& [dim, ids] : by_dim) {
    os << "  { rank=same;";
    for (const auto& id : ids) os << " \"" << id << "\";";
    os << " }\n";
  }
  for (const auto& e : g.edges) {
    os << "  \"" << e.src << "\" -> \"" << e.dst << "\"";
    if (e.suspect) os << " [style=dashed]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pb
