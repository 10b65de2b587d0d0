#include "ugkit/desing.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ugkit/lattice.hpp"

namespace ugkit {

std::optional<std::uint64_t> TailInfo::enumeration_size() const {
  if (!families.empty()) return std::nullopt;
  return named.size();
}

std::optional<EdgeId> TailInfo::g(std::uint64_t j) const {
  if (j == 0) return std::nullopt;
  if (j <= named.size()) return named[j - 1];
  if (families.empty()) return std::nullopt;
  const std::uint64_t k = j - named.size() - 1;
  return EdgeId::family(families[k % families.size()], k / families.size() + 1);
}

std::optional<std::uint64_t> TailInfo::index_of(EdgeId e) const {
  if (e.is_named()) {
    auto it = std::find(named.begin(), named.end(), e);
    if (it == named.end()) return std::nullopt;
    return static_cast<std::uint64_t>(it - named.begin()) + 1;
  }
  if (e.kind != EdgeKind::Family || e.index == 0) return std::nullopt;
  auto it = std::find(families.begin(), families.end(), e.owner);
  if (it == families.end()) return std::nullopt;
  const std::uint64_t pos = static_cast<std::uint64_t>(it - families.begin());
  return named.size() + (e.index - 1) * families.size() + pos + 1;
}

const TailInfo* DesingMap::tail_at(VertexId base) const {
  for (const auto& t : tails) {
    if (t.base == base) return &t;
  }
  return nullptr;
}

std::optional<EdgeId> DesingMap::image(EdgeId e) const {
  if (e.is_named() && e.owner < named_image.size() && named_image[e.owner]) {
    return named_image[e.owner];
  }
  if (e.kind == EdgeKind::Family && e.owner < family_image.size() &&
      family_image[e.owner]) {
    return EdgeId::family(*family_image[e.owner], e.index);
  }
  if (!original.contains(e)) return std::nullopt;
  if (const TailInfo* t = tail_at(original.source(e)); t && t->emitter) {
    if (auto j = t->index_of(e)) return EdgeId::tail_f(t->tail, *j);
  }
  return std::nullopt;
}

namespace {

bool digits_only(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return c >= '0' && c <= '9'; });
}

bool clashes(const std::string& name, const std::vector<std::string>& core,
             const std::vector<std::string>& rays) {
  auto prefixed = [](const std::string& longer, const std::string& prefix) {
    return longer.size() > prefix.size() &&
           longer.compare(0, prefix.size(), prefix) == 0 &&
           digits_only(std::string_view(longer).substr(prefix.size()));
  };
  for (const auto& c : core) {
    if (c == name || prefixed(c, name)) return true;
  }
  for (const auto& r : rays) {
    if (r == name || prefixed(r, name) || prefixed(name, r)) return true;
  }
  return false;
}

// Same vertices, re-expressed over a universe that extends `from` by
// appending rays.
VertexSet widen(const VertexSet& s, const Universe& from, const Universe& to) {
  VertexSet out = VertexSet::empty(to);
  for (auto c : s.core()) out.insert(VertexId::core(c));
  for (std::uint32_t r = 0; r < from.ray_count(); ++r) {
    const auto& part = s.rays()[r];
    if (part.cofinite) {
      VertexSet ray = VertexSet::whole_ray(to, r);
      for (auto i : part.indices) {
        ray = ray.minus(VertexSet::of(to, {VertexId::on_ray(r, i)}));
      }
      out = out.unite(ray);
    } else {
      for (auto i : part.indices) out.insert(VertexId::on_ray(r, i));
    }
  }
  return out;
}

PeriodicRanges widen(const PeriodicRanges& p, const Universe& from,
                     const Universe& to) {
  PeriodicRanges out;
  for (const auto& s : p.prefix) out.prefix.push_back(widen(s, from, to));
  for (const auto& s : p.cycle) out.cycle.push_back(widen(s, from, to));
  return out;
}

// Ranges r(g_1), r(g_2), ... of an emission enumeration as an eventually
// periodic sequence.
PeriodicRanges enumeration_ranges(const Ultragraph& g, const TailInfo& t) {
  PeriodicRanges out;
  for (auto e : t.named) out.prefix.push_back(g.range(e));
  std::uint64_t longest_prefix = 0;
  std::uint64_t period = 1;
  for (auto f : t.families) {
    const auto& r = g.families()[f].ranges;
    longest_prefix = std::max<std::uint64_t>(longest_prefix, r.prefix.size());
    period = std::lcm(period, static_cast<std::uint64_t>(r.cycle.size()));
  }
  for (std::uint64_t idx = 1; idx <= longest_prefix; ++idx) {
    for (auto f : t.families) out.prefix.push_back(g.families()[f].ranges.at(idx));
  }
  for (std::uint64_t idx = longest_prefix + 1; idx <= longest_prefix + period; ++idx) {
    for (auto f : t.families) out.cycle.push_back(g.families()[f].ranges.at(idx));
  }
  return out;
}

DesingMap build(const Ultragraph& g, const std::vector<VertexId>& bases) {
  if (!g.tails().empty()) {
    throw Error(ErrorCode::Unsupported, "the ultragraph already carries tails");
  }
  DesingMap m;
  m.original = g;
  const Universe& u = g.universe();
  std::vector<std::string> rays = u.ray_names();
  for (std::uint32_t k = 0; k < bases.size(); ++k) {
    const VertexId base = bases[k];
    TailInfo t;
    t.base = base;
    t.tail = k;
    std::string name = u.name(base) + "_t";
    while (clashes(name, u.core_names(), rays)) name += "_";
    t.ray = static_cast<std::uint32_t>(rays.size());
    rays.push_back(name);
    for (std::uint32_t i = 0; i < g.named_edges().size(); ++i) {
      if (g.named_edges()[i].source == base) t.named.push_back(EdgeId::named(i));
    }
    for (std::uint32_t f = 0; f < g.families().size(); ++f) {
      if (g.families()[f].source == base) t.families.push_back(f);
    }
    t.emitter = !t.families.empty();
    m.tails.push_back(std::move(t));
  }
  Universe nu(u.core_names(), rays);

  auto is_emitter_base = [&](VertexId v) {
    const TailInfo* t = m.tail_at(v);
    return t && t->emitter;
  };
  std::vector<NamedEdge> edges;
  m.named_image.assign(g.named_edges().size(), std::nullopt);
  for (std::uint32_t i = 0; i < g.named_edges().size(); ++i) {
    const auto& e = g.named_edges()[i];
    if (is_emitter_base(e.source)) continue;
    m.named_image[i] = EdgeId::named(static_cast<std::uint32_t>(edges.size()));
    edges.push_back({e.name, e.source, widen(e.range, u, nu)});
  }
  std::vector<Family> families;
  m.family_image.assign(g.families().size(), std::nullopt);
  for (std::uint32_t f = 0; f < g.families().size(); ++f) {
    const auto& fam = g.families()[f];
    if (is_emitter_base(fam.source)) continue;
    m.family_image[f] = static_cast<std::uint32_t>(families.size());
    families.push_back({fam.name, fam.source, widen(fam.ranges, u, nu)});
  }
  std::vector<Tail> tails;
  for (const auto& t : m.tails) {
    Tail tail{t.ray, t.base, t.emitter, {}};
    if (t.emitter) tail.f_ranges = widen(enumeration_ranges(g, t), u, nu);
    tails.push_back(std::move(tail));
  }
  m.result = Ultragraph(g.name(), std::move(nu), std::move(edges),
                        std::move(families), std::move(tails));
  return m;
}

}  // namespace

DesingMap add_tail_sink(const Ultragraph& g, VertexId w) {
  if (!g.universe().contains(w) || !g.is_sink(w)) {
    throw Error(ErrorCode::NotASink, "not a sink: " + g.vertex_name(w));
  }
  return build(g, {w});
}

DesingMap add_tail_infinite_emitter(const Ultragraph& g, VertexId v0) {
  if (!g.universe().contains(v0) || !g.emissions(v0).infinite) {
    throw Error(ErrorCode::NotInfiniteEmitter,
                "not an infinite emitter: " + g.vertex_name(v0));
  }
  return build(g, {v0});
}

DesingMap desingularize(const Ultragraph& g) {
  const VertexSet sinks = g.sinks();
  if (!sinks.is_finite()) {
    throw Error(ErrorCode::Unbounded,
                "infinitely many sinks would need infinitely many tails");
  }
  std::vector<VertexId> bases = sinks.elements();
  for (auto v : g.infinite_emitters()) bases.push_back(v);
  std::sort(bases.begin(), bases.end());
  return build(g, bases);
}

Path alpha_path(const DesingMap& m, EdgeId g_j) {
  if (m.original.contains(g_j)) {
    const TailInfo* t = m.tail_at(m.original.source(g_j));
    if (t && t->emitter) {
      if (auto j = t->index_of(g_j)) {
        Path p;
        for (std::uint64_t i = 1; i < *j; ++i) p.push_back(EdgeId::tail_e(t->tail, i));
        p.push_back(EdgeId::tail_f(t->tail, *j));
        return p;
      }
    }
  }
  throw Error(ErrorCode::UnknownEdge, "edge is not an enumerated emission of a tail base");
}

std::optional<VertexId> Truncation::vertex(const Ultragraph& full, VertexId v) const {
  if (v.in_core()) return v;
  for (std::uint32_t t = 0; t < full.tails().size(); ++t) {
    if (full.tails()[t].ray != v.ray()) continue;
    if (v.index == 0 || v.index > depth) return std::nullopt;
    return VertexId::core(tail_core_offset[t] + static_cast<std::uint32_t>(v.index - 1));
  }
  if (auto r = ray_map[v.ray()]) return VertexId::on_ray(*r, v.index);
  return std::nullopt;
}

std::optional<EdgeId> Truncation::edge(const Ultragraph& full, EdgeId e) const {
  if (!full.contains(e)) return std::nullopt;
  if (!e.is_tail()) return e;
  if (e.index > depth) return std::nullopt;
  const bool emitter = full.tails()[e.owner].emitter;
  const std::uint32_t step = emitter ? 2 : 1;
  std::uint32_t pos = tail_edge_offset[e.owner] +
                      static_cast<std::uint32_t>(e.index - 1) * step;
  if (e.kind == EdgeKind::TailF) ++pos;
  return EdgeId::named(pos);
}

VertexSet Truncation::set(const Ultragraph& full, const VertexSet& s) const {
  VertexSet out = graph.empty_set();
  for (auto c : s.core()) out.insert(VertexId::core(c));
  for (std::uint32_t r = 0; r < s.rays().size(); ++r) {
    const auto& part = s.rays()[r];
    if (ray_map[r]) {
      if (part.cofinite) {
        VertexSet ray = VertexSet::whole_ray(graph.universe(), *ray_map[r]);
        for (auto i : part.indices) {
          ray = ray.minus(graph.singleton(VertexId::on_ray(*ray_map[r], i)));
        }
        out = out.unite(ray);
      } else {
        for (auto i : part.indices) out.insert(VertexId::on_ray(*ray_map[r], i));
      }
      continue;
    }
    // Tail ray: keep v_1..v_N.
    for (std::uint64_t i = 1; i <= depth; ++i) {
      if (part.contains(i)) out.insert(*vertex(full, VertexId::on_ray(r, i)));
    }
  }
  return out;
}

Truncation truncate(const Ultragraph& f, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::Usage, "truncation depth must be at least 1");
  const Universe& u = f.universe();
  Truncation t;
  t.depth = n;
  std::set<std::uint32_t> tail_rays;
  for (const auto& tail : f.tails()) tail_rays.insert(tail.ray);

  std::vector<std::string> core = u.core_names();
  for (const auto& tail : f.tails()) {
    t.tail_core_offset.push_back(static_cast<std::uint32_t>(core.size()));
    for (std::uint64_t i = 1; i <= n; ++i) {
      core.push_back(u.name(VertexId::on_ray(tail.ray, i)));
    }
  }
  std::vector<std::string> rays;
  t.ray_map.assign(u.ray_count(), std::nullopt);
  for (std::uint32_t r = 0; r < u.ray_count(); ++r) {
    if (tail_rays.count(r)) continue;
    t.ray_map[r] = static_cast<std::uint32_t>(rays.size());
    rays.push_back(u.ray_names()[r]);
  }
  t.graph = Ultragraph(f.name(), Universe(core, rays), {});

  std::vector<NamedEdge> edges;
  for (const auto& e : f.named_edges()) {
    edges.push_back({e.name, *t.vertex(f, e.source), t.set(f, e.range)});
  }
  std::vector<Family> families;
  for (const auto& fam : f.families()) {
    PeriodicRanges r;
    for (const auto& s : fam.ranges.prefix) r.prefix.push_back(t.set(f, s));
    for (const auto& s : fam.ranges.cycle) r.cycle.push_back(t.set(f, s));
    families.push_back({fam.name, *t.vertex(f, fam.source), std::move(r)});
  }
  for (std::uint32_t k = 0; k < f.tails().size(); ++k) {
    const auto& tail = f.tails()[k];
    t.tail_edge_offset.push_back(static_cast<std::uint32_t>(edges.size()));
    for (std::uint64_t i = 1; i <= n; ++i) {
      const VertexId from =
          i == 1 ? tail.base : *t.vertex(f, VertexId::on_ray(tail.ray, i - 1));
      edges.push_back({f.edge_name(EdgeId::tail_e(k, i)), from,
                       t.graph.singleton(*t.vertex(f, VertexId::on_ray(tail.ray, i)))});
      if (tail.emitter) {
        edges.push_back({f.edge_name(EdgeId::tail_f(k, i)), from,
                         t.set(f, tail.f_ranges.at(i))});
      }
    }
  }
  t.graph = Ultragraph(f.name(), t.graph.universe(), std::move(edges),
                       std::move(families));
  return t;
}

F0Split f0_decompose(const DesingMap& m, const VertexSet& b) {
  if (!lattice_member(m.result, b)) {
    throw Error(ErrorCode::NotInLattice, "set is not in the desingularized lattice");
  }
  const Universe& ou = m.original.universe();
  F0Split out{VertexSet::empty(ou), {}};
  for (auto c : b.core()) out.original_part.insert(VertexId::core(c));
  for (std::uint32_t r = 0; r < b.rays().size(); ++r) {
    const auto& part = b.rays()[r];
    if (r < ou.ray_count()) {
      if (part.cofinite) {
        VertexSet ray = VertexSet::whole_ray(ou, r);
        for (auto i : part.indices) {
          ray = ray.minus(VertexSet::of(ou, {VertexId::on_ray(r, i)}));
        }
        out.original_part = out.original_part.unite(ray);
      } else {
        for (auto i : part.indices) out.original_part.insert(VertexId::on_ray(r, i));
      }
      continue;
    }
    if (part.cofinite) {
      throw Error(ErrorCode::NotInLattice, "infinitely many tail vertices");
    }
    for (auto i : part.indices) out.tail_part.push_back(VertexId::on_ray(r, i));
  }
  return out;
}

VertexSet lift_set(const DesingMap& m, const VertexSet& s) {
  return widen(s, m.original.universe(), m.result.universe());
}

}  // namespace ugkit
