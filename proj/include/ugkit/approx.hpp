#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ugkit/algebra.hpp"
#include "ugkit/caps.hpp"
#include "ugkit/core.hpp"

namespace ugkit {

// V(X,Y): vertices in every r(x) and in no r(y). X empty means the whole
// universe.
VertexSet v_set(const Ultragraph& g, const std::vector<EdgeId>& xs,
                const std::vector<EdgeId>& ys);

// E(X,Y): edges whose source lies in V(X,Y).
struct EdgeSet {
  VertexSet sources;
  bool finite = true;
  std::vector<EdgeId> edges;  // complete only when finite

  bool contains(const Ultragraph& g, EdgeId e) const {
    return sources.contains(g.source(e));
  }
  // Sorted `f`; infinite edge sets are never contained in a finite one.
  bool subset_of(const std::vector<EdgeId>& f) const;
};

EdgeSet e_set(const Ultragraph& g, const std::vector<EdgeId>& xs,
              const std::vector<EdgeId>& ys);

struct ApproxVertex {
  bool is_subset = false;
  EdgeId edge;                 // when !is_subset
  std::vector<EdgeId> subset;  // when is_subset, sorted
};

struct ApproxEdge {
  std::size_t from = 0;  // always an edge vertex
  std::size_t to = 0;
};

struct ApproxGraph {
  std::vector<EdgeId> f;  // sorted
  std::vector<ApproxVertex> vertices;
  std::vector<ApproxEdge> edges;
  DirectedGraph graph;  // same indices, with printable names

  std::optional<std::size_t> vertex_of(EdgeId e) const;
  Ultragraph as_ultragraph() const;
};

ApproxGraph approximation_graph(const Ultragraph& g, std::vector<EdgeId> f,
                                const Caps& caps = Caps::from_env());

struct ApproxFamily {
  ApproxGraph graph;
  Ultragraph target;         // graph.as_ultragraph()
  CkAssignment assignment;   // over the source ultragraph
};

ApproxFamily approx_family(const Ultragraph& g, std::vector<EdgeId> f,
                           const Caps& caps = Caps::from_env());

// The sum of Q_X over subset vertices containing e, against
// s_e^* s_e (1 - sum of s_f s_f^* over f in F with s(f) in r(e)); and the
// recovery of s_e from the T's.
std::vector<CkInstance> approx_identity_checks(const Ultragraph& g,
                                               const ApproxFamily& fam,
                                               unsigned depth = 1);

struct LoopLift {
  Path lifted;
  std::optional<std::size_t> graph_exit;  // an exiting edge of G_F
  std::optional<ExitWitness> lifted_exit;
};

// `loop` lists edge indices of the approximation graph forming a cycle.
LoopLift lift_loop(const Ultragraph& g, const ApproxGraph& a,
                   const std::vector<std::size_t>& loop);

// Every simple cycle of the approximation graph, each starting at its
// smallest edge index.
std::vector<std::vector<std::size_t>> approx_cycles(const ApproxGraph& a);

}  // namespace ugkit
