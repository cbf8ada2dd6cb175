#pragma once

#include "pairbundle/normal_forms.hpp"

#include <string>
#include <vector>

namespace pb {

// Lower-semicontinuity of rank: 0 -> 1 -> 2.
bool is_path_psi2(BLabel src, BLabel dst);
// Reflexive-transitive closure of the A-only generators.
bool is_path_psi1(ALabel src, ALabel dst);
std::vector<std::pair<ALabel, ALabel>> psi1_generators();

struct GraphEdge {
  BundleLabel src;
  BundleLabel dst;
  std::string provenance;
  bool suspect = false;
};

struct DroppedEdge {
  GraphEdge edge;
  std::string reason;
};

class ClosureGraph {
 public:
  static const ClosureGraph& get();

  bool is_path(const BundleLabel& src, const BundleLabel& dst) const;
  // True when every path from src to dst uses a suspect edge.
  bool only_via_suspect(const BundleLabel& src, const BundleLabel& dst) const;
  std::vector<BundleLabel> successors(const BundleLabel& l) const;
  std::vector<BundleLabel> predecessors(const BundleLabel& l) const;

  const std::vector<BundleLabel>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& generators() const { return kept_; }
  const std::vector<DroppedEdge>& dropped() const { return dropped_; }
  // Transitive reduction of the closure.
  std::vector<GraphEdge> reduced_edges() const;

 private:
  ClosureGraph();
  int index(const BundleLabel& l) const;

  std::vector<BundleLabel> nodes_;
  std::vector<GraphEdge> kept_;
  std::vector<DroppedEdge> dropped_;
  std::vector<std::vector<char>> reach_;
  std::vector<std::vector<char>> reach_clean_;
};

enum class GraphKind { Psi1, Psi2, Psi };

struct GraphExport {
  struct Node {
    std::string id;
    int dim = 0;
  };
  struct Edge {
    std::string src;
    std::string dst;
    std::string provenance;
    bool suspect = false;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

GraphExport export_graph(GraphKind kind);
std::string to_dot(const GraphExport& g, const std::string& name);

}  // namespace pb
