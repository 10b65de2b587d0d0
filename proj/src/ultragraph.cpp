#include "ugkit/ultragraph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace ugkit {

namespace {

int edge_group(EdgeKind k) {
  switch (k) {
    case EdgeKind::Named: return 0;
    case EdgeKind::Family: return 1;
    default: return 2;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::optional<std::uint64_t> parse_index(std::string_view s) {
  if (!all_digits(s) || s.front() == '0') return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Name-level checks shared by validate() and the Ultragraph constructor.
void check_names(const std::vector<std::string>& core,
                 const std::vector<std::string>& rays,
                 const std::vector<std::string>& edge_names,
                 std::vector<Issue>& issues,
                 const std::vector<std::pair<int, int>>* core_pos = nullptr,
                 const std::vector<std::pair<int, int>>* ray_pos = nullptr,
                 const std::vector<std::pair<int, int>>* edge_pos = nullptr) {
  auto at = [](const std::vector<std::pair<int, int>>* pos, std::size_t i) {
    return pos ? (*pos)[i] : std::pair<int, int>{0, 0};
  };
  std::set<std::string> seen;
  for (std::size_t i = 0; i < core.size(); ++i) {
    if (!seen.insert(core[i]).second) {
      auto [l, c] = at(core_pos, i);
      issues.push_back({ErrorCode::DuplicateId,
                        "vertex '" + core[i] + "' declared twice", l, c});
    }
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    auto [l, c] = at(ray_pos, i);
    if (!seen.insert(rays[i]).second) {
      issues.push_back(
          {ErrorCode::DuplicateId, "ray '" + rays[i] + "' clashes", l, c});
      continue;
    }
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (k == i) continue;
      const auto& other = rays[k];
      if (rays[i].size() > other.size() &&
          rays[i].compare(0, other.size(), other) == 0 &&
          all_digits(std::string_view(rays[i]).substr(other.size()))) {
        issues.push_back({ErrorCode::DuplicateId,
                          "ray '" + rays[i] + "' is ambiguous with ray '" +
                              other + "'",
                          l, c});
      }
    }
  }
  for (std::size_t i = 0; i < core.size(); ++i) {
    for (const auto& r : rays) {
      std::string_view n = core[i];
      if (n.size() > r.size() && n.substr(0, r.size()) == r &&
          parse_index(n.substr(r.size()))) {
        auto [l, c] = at(core_pos, i);
        issues.push_back({ErrorCode::DuplicateId,
                          "vertex '" + core[i] + "' collides with ray '" + r +
                              "'",
                          l, c});
      }
    }
  }
  std::set<std::string> edges_seen;
  for (std::size_t i = 0; i < edge_names.size(); ++i) {
    if (!edges_seen.insert(edge_names[i]).second) {
      auto [l, c] = at(edge_pos, i);
      issues.push_back({ErrorCode::DuplicateId,
                        "edge '" + edge_names[i] + "' declared twice", l, c});
    }
  }
}

}  // namespace

std::strong_ordering EdgeId::operator<=>(const EdgeId& o) const {
  if (auto c = edge_group(kind) <=> edge_group(o.kind); c != 0) return c;
  if (auto c = owner <=> o.owner; c != 0) return c;
  if (auto c = index <=> o.index; c != 0) return c;
  return static_cast<int>(kind) <=> static_cast<int>(o.kind);
}

const VertexSet& PeriodicRanges::at(std::uint64_t j) const {
  if (j <= prefix.size()) return prefix[j - 1];
  return cycle[(j - 1 - prefix.size()) % cycle.size()];
}

void PeriodicRanges::canonicalize() {
  if (cycle.empty()) return;
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = cycle[i] == cycle[i % p];
    if (ok) {
      cycle.resize(p);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
}

std::vector<std::pair<std::uint64_t, VertexSet>> PeriodicRanges::distinct()
    const {
  std::vector<std::pair<std::uint64_t, VertexSet>> out;
  std::set<VertexSet> seen;
  const std::uint64_t total = prefix.size() + cycle.size();
  for (std::uint64_t j = 1; j <= total; ++j) {
    if (seen.insert(at(j)).second) out.emplace_back(j, at(j));
  }
  return out;
}

Ultragraph::Ultragraph(std::string name, Universe universe,
                       std::vector<NamedEdge> edges,
                       std::vector<Family> families, std::vector<Tail> tails)
    : name_(std::move(name)),
      universe_(std::move(universe)),
      edges_(std::move(edges)),
      families_(std::move(families)),
      tails_(std::move(tails)) {
  std::vector<Issue> issues;
  std::vector<std::string> edge_names;
  for (const auto& e : edges_) edge_names.push_back(e.name);
  for (const auto& f : families_) edge_names.push_back(f.name);
  check_names(universe_.core_names(), universe_.ray_names(), edge_names,
              issues);

  const VertexSet shape = empty_set();
  auto check_range = [&](const VertexSet& r, const std::string& owner) {
    if (!r.same_universe(shape)) {
      issues.push_back({ErrorCode::UniverseMismatch,
                        "range of '" + owner + "' is over another universe"});
    } else if (r.is_empty()) {
      issues.push_back(
          {ErrorCode::EmptyRange, "edge '" + owner + "' has an empty range"});
    }
  };
  auto check_source = [&](VertexId v, const std::string& owner) {
    if (!universe_.contains(v)) {
      issues.push_back({ErrorCode::UnknownVertex,
                        "source of '" + owner + "' is not a vertex"});
    }
  };
  for (const auto& e : edges_) {
    check_source(e.source, e.name);
    check_range(e.range, e.name);
  }
  for (auto& f : families_) {
    check_source(f.source, f.name);
    if (f.ranges.cycle.empty()) {
      issues.push_back({ErrorCode::EmptyCycle,
                        "family '" + f.name + "' has an empty cycle"});
    }
    for (const auto& r : f.ranges.prefix) check_range(r, f.name);
    for (const auto& r : f.ranges.cycle) check_range(r, f.name);
    f.ranges.canonicalize();
  }
  std::set<std::uint32_t> tail_rays;
  for (auto& t : tails_) {
    const std::string owner = "tail";
    if (t.ray >= universe_.ray_count() || !tail_rays.insert(t.ray).second) {
      issues.push_back({ErrorCode::UnknownVertex, "tail ray is invalid"});
      continue;
    }
    check_source(t.base, owner);
    if (!t.base.in_core() && t.base.ray() == t.ray) {
      issues.push_back({ErrorCode::UnknownVertex, "tail based on itself"});
    }
    if (t.emitter) {
      if (t.f_ranges.cycle.empty()) {
        issues.push_back({ErrorCode::EmptyCycle, "tail has an empty cycle"});
      }
      for (const auto& r : t.f_ranges.prefix) check_range(r, owner);
      for (const auto& r : t.f_ranges.cycle) check_range(r, owner);
      t.f_ranges.canonicalize();
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  build_indexes();
}

void Ultragraph::build_indexes() {
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    named_out_[edges_[i].source].push_back(i);
  }
  for (std::uint32_t f = 0; f < families_.size(); ++f) {
    families_at_[families_[f].source].push_back(f);
  }
  tail_on_ray_.assign(universe_.ray_count(), std::nullopt);
  for (std::uint32_t t = 0; t < tails_.size(); ++t) {
    tail_at_base_[tails_[t].base] = t;
    tail_on_ray_[tails_[t].ray] = t;
  }
}

bool Ultragraph::contains(EdgeId e) const {
  switch (e.kind) {
    case EdgeKind::Named: return e.owner < edges_.size();
    case EdgeKind::Family: return e.owner < families_.size() && e.index >= 1;
    case EdgeKind::TailE: return e.owner < tails_.size() && e.index >= 1;
    case EdgeKind::TailF:
      return e.owner < tails_.size() && tails_[e.owner].emitter &&
             e.index >= 1;
  }
  return false;
}

VertexId Ultragraph::source(EdgeId e) const {
  switch (e.kind) {
    case EdgeKind::Named: return edges_.at(e.owner).source;
    case EdgeKind::Family: return families_.at(e.owner).source;
    default: {
      const auto& t = tails_.at(e.owner);
      if (e.index == 1) return t.base;
      return VertexId::on_ray(t.ray, e.index - 1);
    }
  }
}

VertexSet Ultragraph::range(EdgeId e) const {
  switch (e.kind) {
    case EdgeKind::Named: return edges_.at(e.owner).range;
    case EdgeKind::Family: return families_.at(e.owner).ranges.at(e.index);
    case EdgeKind::TailE:
      return singleton(VertexId::on_ray(tails_.at(e.owner).ray, e.index));
    case EdgeKind::TailF: return tails_.at(e.owner).f_ranges.at(e.index);
  }
  return empty_set();
}

std::string Ultragraph::edge_name(EdgeId e) const {
  switch (e.kind) {
    case EdgeKind::Named: return edges_.at(e.owner).name;
    case EdgeKind::Family:
      return families_.at(e.owner).name + "@" + std::to_string(e.index);
    case EdgeKind::TailE:
      return universe_.ray_names().at(tails_.at(e.owner).ray) + ".e" +
             std::to_string(e.index);
    case EdgeKind::TailF:
      return universe_.ray_names().at(tails_.at(e.owner).ray) + ".f" +
             std::to_string(e.index);
  }
  return {};
}

std::optional<EdgeId> Ultragraph::find_edge(std::string_view name) const {
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return EdgeId::named(i);
  }
  if (auto at = name.rfind('@'); at != std::string_view::npos) {
    auto idx = parse_index(name.substr(at + 1));
    for (std::uint32_t f = 0; idx && f < families_.size(); ++f) {
      if (families_[f].name == name.substr(0, at)) {
        return EdgeId::family(f, *idx);
      }
    }
  }
  if (auto dot = name.rfind('.');
      dot != std::string_view::npos && dot + 2 <= name.size()) {
    char kind = name[dot + 1];
    auto idx = parse_index(name.substr(dot + 2));
    auto ray = universe_.find_ray(name.substr(0, dot));
    if (idx && ray && (kind == 'e' || kind == 'f') && *ray < tail_on_ray_.size() &&
        tail_on_ray_[*ray]) {
      auto t = *tail_on_ray_[*ray];
      if (kind == 'e') return EdgeId::tail_e(t, *idx);
      if (tails_[t].emitter) return EdgeId::tail_f(t, *idx);
    }
  }
  return std::nullopt;
}

Emissions Ultragraph::emissions(VertexId v) const {
  Emissions out;
  if (auto it = named_out_.find(v); it != named_out_.end()) {
    for (auto i : it->second) out.edges.push_back(EdgeId::named(i));
  }
  out.infinite = families_at_.count(v) > 0;
  if (auto it = tail_at_base_.find(v); it != tail_at_base_.end()) {
    out.edges.push_back(EdgeId::tail_e(it->second, 1));
    if (tails_[it->second].emitter) {
      out.edges.push_back(EdgeId::tail_f(it->second, 1));
    }
  }
  if (!v.in_core() && v.ray() < tail_on_ray_.size() && tail_on_ray_[v.ray()]) {
    auto t = *tail_on_ray_[v.ray()];
    out.edges.push_back(EdgeId::tail_e(t, v.index + 1));
    if (tails_[t].emitter) out.edges.push_back(EdgeId::tail_f(t, v.index + 1));
  }
  return out;
}

std::vector<VertexId> Ultragraph::finite_emitters() const {
  std::set<VertexId> out;
  for (const auto& [v, _] : named_out_) out.insert(v);
  for (const auto& [v, _] : families_at_) out.insert(v);
  for (const auto& [v, _] : tail_at_base_) out.insert(v);
  return {out.begin(), out.end()};
}

VertexSet Ultragraph::sinks() const {
  VertexSet out = all_vertices().minus(VertexSet::of(universe_, finite_emitters()));
  for (const auto& t : tails_) {
    out = out.minus(VertexSet::whole_ray(universe_, t.ray));
  }
  return out;
}

std::vector<VertexId> Ultragraph::infinite_emitters() const {
  std::vector<VertexId> out;
  for (const auto& [v, _] : families_at_) out.push_back(v);
  return out;
}

std::vector<EdgeId> Ultragraph::edges() const {
  if (has_infinite_edges()) {
    throw Error(ErrorCode::InfiniteEdgeSet,
                "ultragraph '" + name_ + "' has infinitely many edges");
  }
  std::vector<EdgeId> out;
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    out.push_back(EdgeId::named(i));
  }
  return out;
}

std::vector<EdgeId> Ultragraph::edges_up_to(std::uint64_t cap) const {
  std::vector<EdgeId> out;
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    out.push_back(EdgeId::named(i));
  }
  for (std::uint32_t f = 0; f < families_.size(); ++f) {
    for (std::uint64_t j = 1; j <= cap; ++j) out.push_back(EdgeId::family(f, j));
  }
  for (std::uint32_t t = 0; t < tails_.size(); ++t) {
    for (std::uint64_t j = 1; j <= cap; ++j) {
      out.push_back(EdgeId::tail_e(t, j));
      if (tails_[t].emitter) out.push_back(EdgeId::tail_f(t, j));
    }
  }
  return out;
}

std::vector<Ultragraph::RangeRep> Ultragraph::distinct_ranges() const {
  std::vector<RangeRep> out;
  std::set<VertexSet> seen;
  auto add = [&](EdgeId e, const VertexSet& s) {
    if (seen.insert(s).second) out.push_back({e, s});
  };
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    add(EdgeId::named(i), edges_[i].range);
  }
  for (std::uint32_t f = 0; f < families_.size(); ++f) {
    for (const auto& [j, s] : families_[f].ranges.distinct()) {
      add(EdgeId::family(f, j), s);
    }
  }
  for (std::uint32_t t = 0; t < tails_.size(); ++t) {
    if (!tails_[t].emitter) continue;
    for (const auto& [j, s] : tails_[t].f_ranges.distinct()) {
      add(EdgeId::tail_f(t, j), s);
    }
  }
  return out;
}

std::uint64_t Ultragraph::presentation_span() const {
  std::uint64_t span = 0;
  for (const auto& f : families_) {
    span = std::max<std::uint64_t>(
        span, f.ranges.prefix.size() + f.ranges.cycle.size());
  }
  for (const auto& t : tails_) {
    if (t.emitter) {
      span = std::max<std::uint64_t>(
          span, t.f_ranges.prefix.size() + t.f_ranges.cycle.size());
    }
  }
  return span;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalnum(head) && head != '_') return false;
  for (char ch : s.substr(1)) {
    auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_' && c != '\'' && c != '.' && c != '/') {
      return false;
    }
  }
  return true;
}

VertexSet resolve_set(const Universe& u, const RawSet& raw,
                      const std::string& context, std::vector<Issue>& issues) {
  VertexSet out = VertexSet::empty(u);
  auto unknown = [&](const RawName& n) {
    issues.push_back({ErrorCode::UnknownVertex,
                      "'" + context + "' refers to unknown vertex '" + n.text +
                          "'",
                      n.line, n.column});
  };
  for (const auto& term : raw.terms) {
    if (!term.ray) {
      for (const auto& id : term.ids) {
        if (auto v = u.find(id.text)) {
          out.insert(*v);
        } else {
          unknown(id);
        }
      }
      continue;
    }
    auto ray = u.find_ray(term.ray_name.text);
    if (!ray) {
      unknown(term.ray_name);
      continue;
    }
    VertexSet part = VertexSet::whole_ray(u, *ray);
    for (const auto& id : term.ids) {
      auto v = u.find(id.text);
      if (!v || v->in_core() || v->ray() != *ray) {
        unknown(id);
        continue;
      }
      part = part.minus(VertexSet::of(u, {*v}));
    }
    out = out.unite(part);
  }
  return out;
}

Ultragraph validate(const RawUltragraph& raw) {
  std::vector<Issue> issues;
  std::vector<std::string> core, rays, edge_names;
  std::vector<std::pair<int, int>> core_pos, ray_pos, edge_pos;
  for (const auto& v : raw.vertices) {
    core.push_back(v.text);
    core_pos.emplace_back(v.line, v.column);
  }
  for (const auto& r : raw.rays) {
    rays.push_back(r.text);
    ray_pos.emplace_back(r.line, r.column);
  }
  for (const auto& e : raw.edges) {
    edge_names.push_back(e.name.text);
    edge_pos.emplace_back(e.name.line, e.name.column);
  }
  for (const auto& f : raw.families) {
    edge_names.push_back(f.name.text);
    edge_pos.emplace_back(f.name.line, f.name.column);
  }
  check_names(core, rays, edge_names, issues, &core_pos, &ray_pos, &edge_pos);

  Universe u(core, rays);
  auto resolve_source = [&](const RawName& src, const std::string& owner) {
    auto v = u.find(src.text);
    if (!v) {
      issues.push_back({ErrorCode::UnknownVertex,
                        "'" + owner + "' refers to unknown vertex '" +
                            src.text + "'",
                        src.line, src.column});
      return VertexId{};
    }
    return *v;
  };

  std::vector<NamedEdge> edges;
  for (const auto& e : raw.edges) {
    NamedEdge out{e.name.text, resolve_source(e.source, e.name.text),
                  resolve_set(u, e.range, e.name.text, issues)};
    if (out.range.is_empty()) {
      issues.push_back({ErrorCode::EmptyRange,
                        "edge '" + e.name.text + "' has an empty range",
                        e.range.line, e.range.column});
    }
    edges.push_back(std::move(out));
  }
  std::vector<Family> families;
  for (const auto& f : raw.families) {
    Family out{f.name.text, resolve_source(f.source, f.name.text), {}};
    auto convert = [&](const std::vector<RawSet>& sets,
                       std::vector<VertexSet>& dest) {
      for (const auto& s : sets) {
        dest.push_back(resolve_set(u, s, f.name.text, issues));
        if (dest.back().is_empty()) {
          issues.push_back({ErrorCode::EmptyRange,
                            "family '" + f.name.text + "' has an empty range",
                            s.line, s.column});
        }
      }
    };
    convert(f.prefix, out.ranges.prefix);
    convert(f.cycle, out.ranges.cycle);
    if (f.cycle.empty()) {
      issues.push_back({ErrorCode::EmptyCycle,
                        "family '" + f.name.text + "' has an empty cycle",
                        f.line, f.column});
    }
    families.push_back(std::move(out));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Ultragraph(raw.name.text, std::move(u), std::move(edges),
                    std::move(families));
}

}  // namespace ugkit
