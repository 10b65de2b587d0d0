#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugkit/error.hpp"
#include "ugkit/vertex_set.hpp"

namespace ugkit {

enum class EdgeKind : std::uint8_t { Named, Family, TailE, TailF };

// Named edges are addressed by declaration position; family and tail edges by
// (owner position, index >= 1).
struct EdgeId {
  EdgeKind kind = EdgeKind::Named;
  std::uint32_t owner = 0;
  std::uint64_t index = 0;

  static EdgeId named(std::uint32_t pos) { return {EdgeKind::Named, pos, 0}; }
  static EdgeId family(std::uint32_t fam, std::uint64_t j) {
    return {EdgeKind::Family, fam, j};
  }
  static EdgeId tail_e(std::uint32_t tail, std::uint64_t i) {
    return {EdgeKind::TailE, tail, i};
  }
  static EdgeId tail_f(std::uint32_t tail, std::uint64_t j) {
    return {EdgeKind::TailF, tail, j};
  }

  bool is_named() const { return kind == EdgeKind::Named; }
  bool is_tail() const {
    return kind == EdgeKind::TailE || kind == EdgeKind::TailF;
  }

  // Declaration order: named edges, then families, then tails; tail edges
  // interleave as e1 f1 e2 f2 ...
  std::strong_ordering operator<=>(const EdgeId& o) const;
  bool operator==(const EdgeId&) const = default;
};

using Path = std::vector<EdgeId>;

// An eventually periodic sequence of ranges r_1, r_2, ...
struct PeriodicRanges {
  std::vector<VertexSet> prefix;
  std::vector<VertexSet> cycle;

  const VertexSet& at(std::uint64_t j) const;
  // Shortest cycle, shortest prefix.
  void canonicalize();
  // Each distinct range with the first index where it occurs.
  std::vector<std::pair<std::uint64_t, VertexSet>> distinct() const;

  bool operator==(const PeriodicRanges&) const = default;
};

struct NamedEdge {
  std::string name;
  VertexId source;
  VertexSet range;
};

struct Family {
  std::string name;
  VertexId source;
  PeriodicRanges ranges;
};

// A tail v_0 = base, v_1, v_2, ... laid along ray `ray`. Edge e_i runs from
// v_{i-1} to {v_i}; for emitter tails f_j runs from v_{j-1} to f_ranges.at(j).
struct Tail {
  std::uint32_t ray = 0;
  VertexId base;
  bool emitter = false;
  PeriodicRanges f_ranges;
};

struct Emissions {
  std::vector<EdgeId> edges;  // the finitely many explicitly listed edges
  bool infinite = false;      // the vertex also hosts a family

  bool is_sink() const { return edges.empty() && !infinite; }
  bool is_regular() const { return !edges.empty() && !infinite; }
};

class Ultragraph {
 public:
  Ultragraph() = default;
  // Checks every structural invariant and throws ValidationError listing all
  // problems found.
  Ultragraph(std::string name, Universe universe, std::vector<NamedEdge> edges,
             std::vector<Family> families = {}, std::vector<Tail> tails = {});

  const std::string& name() const { return name_; }
  const Universe& universe() const { return universe_; }
  const std::vector<NamedEdge>& named_edges() const { return edges_; }
  const std::vector<Family>& families() const { return families_; }
  const std::vector<Tail>& tails() const { return tails_; }

  bool has_infinite_edges() const {
    return !families_.empty() || !tails_.empty();
  }

  bool contains(EdgeId e) const;
  VertexId source(EdgeId e) const;
  VertexSet range(EdgeId e) const;
  std::string edge_name(EdgeId e) const;
  std::optional<EdgeId> find_edge(std::string_view name) const;
  std::string vertex_name(VertexId v) const { return universe_.name(v); }
  std::optional<VertexId> find_vertex(std::string_view name) const {
    return universe_.find(name);
  }

  Emissions emissions(VertexId v) const;
  bool is_sink(VertexId v) const { return emissions(v).is_sink(); }
  bool is_regular(VertexId v) const { return emissions(v).is_regular(); }

  VertexSet empty_set() const { return VertexSet::empty(universe_); }
  VertexSet all_vertices() const { return VertexSet::all(universe_); }
  VertexSet singleton(VertexId v) const {
    return VertexSet::of(universe_, {v});
  }

  // Vertices emitting nothing; may be infinite along rays.
  VertexSet sinks() const;
  std::vector<VertexId> infinite_emitters() const;
  // Vertices that emit at least one edge, restricted to the finite part;
  // tail rays are reported through `tails()`.
  std::vector<VertexId> finite_emitters() const;

  // All edges in declaration order; throws InfiniteEdgeSet if there are
  // families or tails.
  std::vector<EdgeId> edges() const;
  // Named edges plus family and tail edges with index <= cap.
  std::vector<EdgeId> edges_up_to(std::uint64_t cap) const;

  struct RangeRep {
    EdgeId edge;
    VertexSet set;
  };
  // Each distinct range of the presentation with its first edge. Tail edges
  // e_i have singleton ranges and are left out.
  std::vector<RangeRep> distinct_ranges() const;

  // Smallest index cap that reaches every distinct family or tail range.
  std::uint64_t presentation_span() const;

 private:
  void build_indexes();

  std::string name_;
  Universe universe_;
  std::vector<NamedEdge> edges_;
  std::vector<Family> families_;
  std::vector<Tail> tails_;

  std::map<VertexId, std::vector<std::uint32_t>> named_out_;
  std::map<VertexId, std::vector<std::uint32_t>> families_at_;
  std::map<VertexId, std::uint32_t> tail_at_base_;
  std::vector<std::optional<std::uint32_t>> tail_on_ray_;
};

// Unvalidated declarations, as read from a document.
struct RawName {
  std::string text;
  int line = 0;
  int column = 0;
};

struct RawSet {
  struct Term {
    bool ray = false;
    RawName ray_name;            // when ray
    std::vector<RawName> ids;    // members, or exclusions when ray
  };
  std::vector<Term> terms;
  int line = 0;
  int column = 0;
};

struct RawUltragraph {
  RawName name;
  std::vector<RawName> vertices;
  std::vector<RawName> rays;
  struct Edge {
    RawName name;
    RawName source;
    RawSet range;
  };
  struct Fam {
    RawName name;
    RawName source;
    std::vector<RawSet> prefix;
    std::vector<RawSet> cycle;
    int line = 0;
    int column = 0;
  };
  std::vector<Edge> edges;
  std::vector<Fam> families;
};

// Resolves a raw set against a universe; unresolved names are appended to
// `issues` with `context` as the owning declaration.
VertexSet resolve_set(const Universe& u, const RawSet& raw,
                      const std::string& context, std::vector<Issue>& issues);

Ultragraph validate(const RawUltragraph& raw);

bool is_identifier(std::string_view s);

}  // namespace ugkit
