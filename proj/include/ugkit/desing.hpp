#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ugkit/ultragraph.hpp"

namespace ugkit {

// One tail of a desingularization. Vertices of the original ultragraph keep
// their ids in the desingularized one; the tail occupies a new ray.
struct TailInfo {
  VertexId base;
  bool emitter = false;
  std::uint32_t tail = 0;  // position in the new ultragraph's tails()
  std::uint32_t ray = 0;   // ray index in the new universe

  // Emissions of the base in the original, enumerated as g_1, g_2, ...:
  // named edges in declaration order, then family edges by index, families
  // in declaration order within an index.
  std::vector<EdgeId> named;
  std::vector<std::uint32_t> families;

  bool finite_enumeration() const { return families.empty(); }
  std::optional<std::uint64_t> enumeration_size() const;
  // g_j, j >= 1; nullopt past the end of a finite enumeration.
  std::optional<EdgeId> g(std::uint64_t j) const;
  std::optional<std::uint64_t> index_of(EdgeId e) const;
};

struct DesingMap {
  Ultragraph original;
  Ultragraph result;
  std::vector<TailInfo> tails;
  // Original named edge position -> named edge in the result; nullopt for
  // edges leaving an infinite emitter.
  std::vector<std::optional<EdgeId>> named_image;
  // Original family position -> family position in the result.
  std::vector<std::optional<std::uint32_t>> family_image;

  const TailInfo* tail_at(VertexId base) const;
  // Image of an edge of the original whose source is not an infinite
  // emitter, or the f edge of an enumerated emission.
  std::optional<EdgeId> image(EdgeId e) const;
};

DesingMap add_tail_sink(const Ultragraph& g, VertexId w);
DesingMap add_tail_infinite_emitter(const Ultragraph& g, VertexId v0);
// Throws Unbounded when the original has infinitely many sinks.
DesingMap desingularize(const Ultragraph& g);

// alpha^j = e_1 ... e_{j-1} f_j for the emission g_j of some tail base.
Path alpha_path(const DesingMap& m, EdgeId g_j);

// Finite window onto the tails: v_1..v_N become core vertices named like
// the ray vertices, and e_i, f_i for i <= N become named edges. v_N is a
// sink of the window.
struct Truncation {
  Ultragraph graph;
  std::uint64_t depth = 0;
  std::vector<std::uint32_t> tail_core_offset;  // per tail: core index of v_1
  std::vector<std::uint32_t> tail_edge_offset;  // per tail: position of e_1
  std::vector<std::optional<std::uint32_t>> ray_map;  // kept rays

  std::optional<VertexId> vertex(const Ultragraph& full, VertexId v) const;
  std::optional<EdgeId> edge(const Ultragraph& full, EdgeId e) const;
  VertexSet set(const Ultragraph& full, const VertexSet& s) const;
};

Truncation truncate(const Ultragraph& f, std::uint64_t n);

struct F0Split {
  VertexSet original_part;          // over the original universe
  std::vector<VertexId> tail_part;  // finitely many tail vertices
};

F0Split f0_decompose(const DesingMap& m, const VertexSet& b);

// Widens a set of the original universe to the desingularized one.
VertexSet lift_set(const DesingMap& m, const VertexSet& s);

}  // namespace ugkit
