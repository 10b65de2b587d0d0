#include "ugkit/core.hpp"

#include <algorithm>
#include <map>

#include "ugkit/error.hpp"

namespace ugkit {

Matrix01::Matrix01(std::size_t n) : entries_(n * n, 0) {
  for (std::size_t i = 1; i <= n; ++i) labels_.push_back(std::to_string(i));
}

Matrix01::Matrix01(std::vector<std::string> labels,
                   std::vector<std::uint8_t> entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  if (entries_.size() != labels_.size() * labels_.size()) {
    throw Error(ErrorCode::Syntax, "matrix is not square");
  }
  for (auto v : entries_) {
    if (v > 1) throw Error(ErrorCode::Syntax, "matrix entries must be 0 or 1");
  }
}

Matrix01 Matrix01::from_rows(const std::vector<std::vector<int>>& rows) {
  Matrix01 m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::Syntax, "matrix is not square");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) {
        throw Error(ErrorCode::Syntax, "matrix entries must be 0 or 1");
      }
      m.set(i, j, rows[i][j] == 1);
    }
  }
  return m;
}

void Matrix01::set_labels(std::vector<std::string> labels) {
  if (labels.size() != labels_.size()) {
    throw Error(ErrorCode::Syntax, "label count does not match matrix size");
  }
  labels_ = std::move(labels);
}

std::optional<std::size_t> Matrix01::first_zero_row() const {
  for (std::size_t i = 0; i < size(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < size() && zero; ++j) zero = at(i, j) == 0;
    if (zero) return i + 1;
  }
  return std::nullopt;
}

SingularVertices singular_vertices(const Ultragraph& g) {
  return {g.sinks(), g.infinite_emitters()};
}

Matrix01 edge_matrix(const Ultragraph& g) {
  auto edges = g.edges();
  std::vector<std::string> labels;
  for (auto e : edges) labels.push_back(g.edge_name(e));
  std::vector<std::uint8_t> entries(edges.size() * edges.size(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& r = g.named_edges()[i].range;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      entries[i * edges.size() + j] = r.contains(g.source(edges[j])) ? 1 : 0;
    }
  }
  return Matrix01(std::move(labels), std::move(entries));
}

Ultragraph ultragraph_from_matrix(const Matrix01& a, const std::string& name) {
  if (auto z = a.first_zero_row()) {
    throw Error(ErrorCode::ZeroRow, "ZeroRow(" + std::to_string(*z) + ")");
  }
  std::vector<std::string> core;
  for (const auto& l : a.labels()) core.push_back("v" + l);
  Universe u(core, {});
  std::vector<NamedEdge> edges;
  for (std::size_t i = 0; i < a.size(); ++i) {
    VertexSet r = VertexSet::empty(u);
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a.at(i, j)) r.insert(VertexId::core(static_cast<std::uint32_t>(j)));
    }
    edges.push_back({"e" + a.labels()[i],
                     VertexId::core(static_cast<std::uint32_t>(i)),
                     std::move(r)});
  }
  return Ultragraph(name, std::move(u), std::move(edges));
}

DirectedGraph graph_from_matrix(const Matrix01& a) {
  DirectedGraph h;
  h.name = "gr";
  h.vertices = a.labels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a.at(i, j)) {
        h.edges.push_back({"g" + a.labels()[i] + "_" + a.labels()[j], i, j});
      }
    }
  }
  return h;
}

Ultragraph ultragraph_from_graph(const DirectedGraph& h) {
  Universe u(h.vertices, {});
  std::vector<NamedEdge> edges;
  for (const auto& e : h.edges) {
    edges.push_back(
        {e.name, VertexId::core(static_cast<std::uint32_t>(e.source)),
         VertexSet::of(u, {VertexId::core(static_cast<std::uint32_t>(e.target))})});
  }
  return Ultragraph(h.name, std::move(u), std::move(edges));
}

std::vector<Path> enumerate_paths(const Ultragraph& g, std::size_t max_len,
                                  std::optional<std::uint64_t> index_cap) {
  if (g.has_infinite_edges() && !index_cap) {
    throw Error(ErrorCode::Unbounded,
                "path enumeration over infinitely many edges needs an index cap");
  }
  const auto edges = index_cap ? g.edges_up_to(*index_cap) : g.edges();
  std::vector<VertexSet> ranges;
  for (auto e : edges) ranges.push_back(g.range(e));
  std::vector<std::vector<std::size_t>> next(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (ranges[i].contains(g.source(edges[j]))) next[i].push_back(j);
    }
  }
  std::vector<Path> out;
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t i = 0; i < edges.size(); ++i) level.push_back({i});
  for (std::size_t len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<std::vector<std::size_t>> deeper;
    for (const auto& p : level) {
      Path path;
      for (auto i : p) path.push_back(edges[i]);
      out.push_back(std::move(path));
      if (len == max_len) continue;
      for (auto j : next[p.back()]) {
        deeper.push_back(p);
        deeper.back().push_back(j);
      }
    }
    level = std::move(deeper);
  }
  return out;
}

bool is_path(const Ultragraph& g, const Path& p) {
  if (p.empty()) return false;
  for (auto e : p) {
    if (!g.contains(e)) return false;
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.range(p[i]).contains(g.source(p[i + 1]))) return false;
  }
  return true;
}

bool is_loop(const Ultragraph& g, const Path& p) {
  return is_path(g, p) && g.range(p.back()).contains(g.source(p.front()));
}

namespace {

std::optional<EdgeId> family_edge_at(const Ultragraph& g, VertexId v,
                                     std::optional<EdgeId> avoid) {
  for (std::uint32_t f = 0; f < g.families().size(); ++f) {
    if (g.families()[f].source != v) continue;
    auto e = EdgeId::family(f, 1);
    if (avoid && *avoid == e) e = EdgeId::family(f, 2);
    return e;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ExitWitness> find_exit(const Ultragraph& g, const Path& loop) {
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const EdgeId next = loop[(i + 1) % n];
    const VertexId landing = g.source(next);
    const VertexSet r = g.range(loop[i]);
    if (auto other = r.first_other_than(landing)) {
      auto em = g.emissions(*other);
      if (!em.edges.empty()) {
        return ExitWitness{ExitWitness::Kind::Edge, i, em.edges.front(), {}};
      }
      if (auto fe = family_edge_at(g, *other, std::nullopt)) {
        return ExitWitness{ExitWitness::Kind::Edge, i, *fe, {}};
      }
      return ExitWitness{ExitWitness::Kind::Sink, i, {}, *other};
    }
    auto em = g.emissions(landing);
    for (auto e : em.edges) {
      if (e != next) return ExitWitness{ExitWitness::Kind::Edge, i, e, {}};
    }
    if (em.infinite) {
      if (auto fe = family_edge_at(g, landing, next)) {
        return ExitWitness{ExitWitness::Kind::Edge, i, *fe, {}};
      }
    }
  }
  return std::nullopt;
}

namespace {

// Cycles of a partial function on 0..n-1, each rotated to start at its
// smallest element; returns the one minimal by (length, sequence).
std::optional<std::vector<std::size_t>> best_cycle(
    const std::vector<std::optional<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<std::size_t> trail;
    std::size_t cur = start;
    while (true) {
      if (state[cur] == 1) {
        auto it = std::find(trail.begin(), trail.end(), cur);
        std::vector<std::size_t> cyc(it, trail.end());
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()),
                    cyc.end());
        if (!best || cyc.size() < best->size() ||
            (cyc.size() == best->size() && cyc < *best)) {
          best = cyc;
        }
        break;
      }
      if (state[cur] == 2) break;
      state[cur] = 1;
      trail.push_back(cur);
      if (!succ[cur]) break;
      cur = *succ[cur];
    }
    for (auto t : trail) state[t] = 2;
  }
  return best;
}

}  // namespace

LoopVerdict condition_l(const Ultragraph& g) {
  const auto& named = g.named_edges();
  std::vector<std::optional<std::size_t>> succ(named.size());
  for (std::size_t i = 0; i < named.size(); ++i) {
    const auto& r = named[i].range;
    if (!r.is_finite() || r.count() != 1) continue;
    auto em = g.emissions(*r.first());
    if (em.infinite || em.edges.size() != 1 || !em.edges[0].is_named()) continue;
    succ[i] = em.edges[0].owner;
  }
  auto cyc = best_cycle(succ);
  if (!cyc) return {};
  LoopVerdict v{false, {}};
  for (auto i : *cyc) v.witness.push_back(EdgeId::named(static_cast<std::uint32_t>(i)));
  return v;
}

LoopVerdict condition_l_bruteforce(const Ultragraph& g, std::size_t max_len) {
  for (const auto& p : enumerate_paths(g, max_len)) {
    if (!g.range(p.back()).contains(g.source(p.front()))) continue;
    if (!find_exit(g, p)) return {false, p};
  }
  return {};
}

GraphLoopVerdict condition_l_graph(const DirectedGraph& h) {
  std::vector<std::vector<std::size_t>> out(h.vertices.size());
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    out[h.edges[i].source].push_back(i);
  }
  // An edge continues to the unique edge leaving its target. Every edge on a
  // cycle of this map is then the only edge leaving its own source.
  std::vector<std::optional<std::size_t>> succ(h.edges.size());
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const auto& leaving = out[h.edges[i].target];
    if (leaving.size() == 1) succ[i] = leaving.front();
  }
  auto cyc = best_cycle(succ);
  if (!cyc) return {};
  return {false, *cyc};
}

std::string path_name(const Ultragraph& g, const Path& p) {
  std::string out;
  for (auto e : p) {
    if (!out.empty()) out += ' ';
    out += g.edge_name(e);
  }
  return out;
}

}  // namespace ugkit
