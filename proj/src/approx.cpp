#include "ugkit/approx.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>

#include "ugkit/error.hpp"

namespace ugkit {

VertexSet v_set(const Ultragraph& g, const std::vector<EdgeId>& xs,
                const std::vector<EdgeId>& ys) {
  VertexSet v = g.all_vertices();
  for (auto x : xs) v = v.intersect(g.range(x));
  for (auto y : ys) v = v.minus(g.range(y));
  return v;
}

bool EdgeSet::subset_of(const std::vector<EdgeId>& f) const {
  if (!finite) return false;
  return std::includes(f.begin(), f.end(), edges.begin(), edges.end());
}

EdgeSet e_set(const Ultragraph& g, const std::vector<EdgeId>& xs,
              const std::vector<EdgeId>& ys) {
  EdgeSet out;
  out.sources = v_set(g, xs, ys);
  std::set<std::uint32_t> tail_rays;
  for (const auto& t : g.tails()) tail_rays.insert(t.ray);

  auto take = [&](VertexId v) {
    auto em = g.emissions(v);
    if (em.infinite) out.finite = false;
    out.edges.insert(out.edges.end(), em.edges.begin(), em.edges.end());
  };
  for (auto c : out.sources.core()) take(VertexId::core(c));
  for (std::uint32_t r = 0; r < out.sources.rays().size(); ++r) {
    const auto& part = out.sources.rays()[r];
    if (part.cofinite) {
      // Cofinitely many vertices of a tail ray all emit.
      if (tail_rays.count(r)) out.finite = false;
      // Ray vertices outside tails emit only through named edges.
      for (const auto& e : g.named_edges()) {
        if (!e.source.in_core() && e.source.ray() == r &&
            part.contains(e.source.index)) {
          take(e.source);
        }
      }
      continue;
    }
    for (auto i : part.indices) take(VertexId::on_ray(r, i));
  }
  if (!out.finite) {
    out.edges.clear();
    return out;
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  return out;
}

std::optional<std::size_t> ApproxGraph::vertex_of(EdgeId e) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].is_subset && vertices[i].edge == e) return i;
  }
  return std::nullopt;
}

Ultragraph ApproxGraph::as_ultragraph() const { return ultragraph_from_graph(graph); }

namespace {

std::vector<EdgeId> prepare_f(const Ultragraph& g, std::vector<EdgeId> f,
                              const Caps& caps) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  for (auto e : f) {
    if (!g.contains(e)) throw Error(ErrorCode::UnknownEdge, "edge not in the ultragraph");
  }
  if (f.size() > caps.approx) {
    throw Error(ErrorCode::FTooLarge,
                std::to_string(f.size()) + " edges in F exceed the cap of " +
                    std::to_string(caps.approx));
  }
  return f;
}

std::vector<EdgeId> members(const std::vector<EdgeId>& f, std::uint32_t mask,
                            bool inside) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (((mask >> i) & 1u) == (inside ? 1u : 0u)) out.push_back(f[i]);
  }
  return out;
}

// Nonempty masks ordered by size, then by their member lists.
std::vector<std::uint32_t> subset_order(std::size_t n) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << n); ++m) masks.push_back(m);
  auto key = [](std::uint32_t m) {
    std::vector<int> idx;
    for (int i = 0; i < 32; ++i) {
      if ((m >> i) & 1u) idx.push_back(i);
    }
    return idx;
  };
  std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : key(a) < key(b);
  });
  return masks;
}

std::string fresh(std::string name, std::set<std::string>& used) {
  while (used.count(name)) name += "'";
  used.insert(name);
  return name;
}

std::string vertex_label(const Ultragraph& g, EdgeId e) {
  std::string s = g.edge_name(e);
  std::replace(s.begin(), s.end(), '@', '.');
  return s;
}

}  // namespace

ApproxGraph approximation_graph(const Ultragraph& g, std::vector<EdgeId> f,
                                const Caps& caps) {
  ApproxGraph a;
  a.f = prepare_f(g, std::move(f), caps);
  a.graph.name = g.name() + "_F";
  std::set<std::string> used;
  for (auto e : a.f) {
    a.vertices.push_back({false, e, {}});
    a.graph.vertices.push_back(fresh(vertex_label(g, e), used));
  }
  for (auto mask : subset_order(a.f.size())) {
    auto xs = members(a.f, mask, true);
    if (e_set(g, xs, members(a.f, mask, false)).subset_of(a.f)) continue;
    std::string label = "X";
    for (auto e : xs) label += "." + vertex_label(g, e);
    a.vertices.push_back({true, {}, xs});
    a.graph.vertices.push_back(fresh(label, used));
  }
  std::set<std::string> edge_names;
  for (std::size_t i = 0; i < a.f.size(); ++i) {
    const VertexSet r = g.range(a.f[i]);
    for (std::size_t j = 0; j < a.f.size(); ++j) {
      if (!r.contains(g.source(a.f[j]))) continue;
      a.edges.push_back({i, j});
    }
    for (std::size_t k = a.f.size(); k < a.vertices.size(); ++k) {
      const auto& xs = a.vertices[k].subset;
      if (std::binary_search(xs.begin(), xs.end(), a.f[i])) a.edges.push_back({i, k});
    }
  }
  for (const auto& e : a.edges) {
    a.graph.edges.push_back(
        {fresh(a.graph.vertices[e.from] + "/" + a.graph.vertices[e.to], edge_names),
         e.from, e.to});
  }
  return a;
}

namespace {

AlgebraElement sum_range_projections(const Ultragraph& g,
                                     const std::vector<EdgeId>& f) {
  AlgebraElement out;
  for (auto e : f) out += mul(g, gen_s(g, e), gen_s_star(g, e));
  return out;
}

// Q_X = p_{A_X} (1 - p_{B_X}) (1 - sum over f in F of s_f s_f^*).
AlgebraElement q_subset(const Ultragraph& g, const std::vector<EdgeId>& f,
                        std::uint32_t mask, const AlgebraElement& one_minus_sum) {
  auto xs = members(f, mask, true);
  auto ys = members(f, mask, false);
  VertexSet a_x = g.all_vertices();
  for (auto x : xs) a_x = a_x.intersect(g.range(x));
  AlgebraElement q = gen_p(g, a_x);
  if (!ys.empty()) {
    VertexSet b_x = g.empty_set();
    for (auto y : ys) b_x = b_x.unite(g.range(y));
    q = mul(g, q, AlgebraElement::one() - gen_p(g, b_x));
  }
  return mul(g, q, one_minus_sum);
}

std::uint32_t mask_of(const std::vector<EdgeId>& f, const std::vector<EdgeId>& xs) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::binary_search(xs.begin(), xs.end(), f[i])) m |= 1u << i;
  }
  return m;
}

}  // namespace

ApproxFamily approx_family(const Ultragraph& g, std::vector<EdgeId> f,
                           const Caps& caps) {
  ApproxFamily fam{approximation_graph(g, std::move(f), caps), {}, {}};
  const auto& a = fam.graph;
  fam.target = a.as_ultragraph();
  const AlgebraElement one_minus_sum =
      AlgebraElement::one() - sum_range_projections(g, a.f);
  std::vector<AlgebraElement> q;
  for (const auto& v : a.vertices) {
    if (v.is_subset) {
      q.push_back(q_subset(g, a.f, mask_of(a.f, v.subset), one_minus_sum));
    } else {
      q.push_back(mul(g, gen_s(g, v.edge), gen_s_star(g, v.edge)));
    }
  }
  for (std::uint32_t i = 0; i < q.size(); ++i) {
    fam.assignment.p.emplace(VertexId::core(i), q[i]);
  }
  for (std::uint32_t k = 0; k < a.edges.size(); ++k) {
    const auto& e = a.edges[k];
    fam.assignment.s.emplace(EdgeId::named(k),
                             mul(g, gen_s(g, a.vertices[e.from].edge), q[e.to]));
  }
  return fam;
}

std::vector<CkInstance> approx_identity_checks(const Ultragraph& g,
                                               const ApproxFamily& fam,
                                               unsigned depth) {
  const auto& f = fam.graph.f;
  const AlgebraElement one_minus_sum =
      AlgebraElement::one() - sum_range_projections(g, f);
  std::vector<AlgebraElement> q_all(std::size_t{1} << f.size());
  for (std::uint32_t m = 1; m < q_all.size(); ++m) {
    q_all[m] = q_subset(g, f, m, one_minus_sum);
  }
  std::vector<CkInstance> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const EdgeId e = f[i];
    const std::string name = g.edge_name(e);
    const VertexSet r = g.range(e);
    AlgebraElement q_sum;
    for (std::uint32_t m = 1; m < q_all.size(); ++m) {
      if ((m >> i) & 1u) q_sum += q_all[m];
    }
    std::vector<EdgeId> followers;
    for (auto x : f) {
      if (r.contains(g.source(x))) followers.push_back(x);
    }
    const AlgebraElement se = gen_s(g, e);
    AlgebraElement rhs = mul(g, mul(g, gen_s_star(g, e), se),
                             AlgebraElement::one() - sum_range_projections(g, followers));
    out.push_back({"Q-sum identity", "sum of Q_X over X containing " + name,
                   equals(g, q_sum, rhs, depth)});

    AlgebraElement rebuilt = mul(g, se, q_sum);
    for (auto x : followers) rebuilt += mul(g, se, mul(g, gen_s(g, x), gen_s_star(g, x)));
    out.push_back({"recovery", "s_" + name, equals(g, rebuilt, se, depth)});
  }
  if (g.sinks().is_empty()) {
    std::set<std::uint32_t> vertex_masks;
    for (const auto& v : fam.graph.vertices) {
      if (v.is_subset) vertex_masks.insert(mask_of(f, v.subset));
    }
    for (std::uint32_t m = 1; m < q_all.size(); ++m) {
      if (vertex_masks.count(m)) continue;
      std::string label;
      for (auto x : members(f, m, true)) label += (label.empty() ? "" : " ") + g.edge_name(x);
      out.push_back({"vanishing", "Q_{" + label + "}",
                     equals(g, q_all[m], AlgebraElement{}, depth)});
    }
  }
  return out;
}

LoopLift lift_loop(const Ultragraph& g, const ApproxGraph& a,
                   const std::vector<std::size_t>& loop) {
  if (loop.empty()) throw Error(ErrorCode::NotALoop, "empty edge sequence");
  for (auto k : loop) {
    if (k >= a.edges.size()) throw Error(ErrorCode::NotALoop, "edge index out of range");
  }
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (a.edges[loop[i]].to != a.edges[loop[(i + 1) % loop.size()]].from) {
      throw Error(ErrorCode::NotALoop, "edges do not form a cycle");
    }
  }
  if (!g.sinks().is_empty()) {
    throw Error(ErrorCode::NoSinksViolated, "loop lifting needs an ultragraph without sinks");
  }
  LoopLift out;
  for (auto k : loop) out.lifted.push_back(a.vertices[a.edges[k].from].edge);
  for (auto k : loop) {
    for (std::size_t other = 0; other < a.edges.size() && !out.graph_exit; ++other) {
      if (other != k && a.edges[other].from == a.edges[k].from) out.graph_exit = other;
    }
    if (out.graph_exit) break;
  }
  out.lifted_exit = find_exit(g, out.lifted);
  return out;
}

std::vector<std::vector<std::size_t>> approx_cycles(const ApproxGraph& a) {
  const std::size_t n = a.vertices.size();
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t k = 0; k < a.edges.size(); ++k) out_edges[a.edges[k].from].push_back(k);

  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> trail;
  // Cycles through `start` using only vertices >= start, so each cycle is
  // found once, from its smallest vertex.
  auto dfs = [&](auto&& self, std::size_t start, std::size_t v) -> void {
    for (auto k : out_edges[v]) {
      const std::size_t w = a.edges[k].to;
      if (w < start) continue;
      if (w == start) {
        auto cyc = trail;
        cyc.push_back(k);
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
        cycles.push_back(std::move(cyc));
        continue;
      }
      if (on_path[w]) continue;
      on_path[w] = true;
      trail.push_back(k);
      self(self, start, w);
      trail.pop_back();
      on_path[w] = false;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    dfs(dfs, s, s);
    on_path[s] = false;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace ugkit
