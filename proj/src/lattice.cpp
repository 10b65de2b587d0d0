#include "ugkit/lattice.hpp"

#include <algorithm>
#include <cstdint>

#include "ugkit/error.hpp"

namespace ugkit {

namespace {

VertexSet intersection_of(const Ultragraph& g, const std::vector<EdgeId>& xs) {
  VertexSet out = g.all_vertices();
  for (auto e : xs) out = out.intersect(g.range(e));
  return out;
}

}  // namespace

VertexSet evaluate(const Ultragraph& g, const LatticeWitness& w) {
  VertexSet out = w.finite_part;
  for (const auto& xs : w.intersections) {
    out = out.unite(intersection_of(g, xs));
  }
  return out;
}

LatticeWitness normalize_witness(const Ultragraph& g, const LatticeWitness& w) {
  std::vector<std::vector<EdgeId>> terms;
  for (auto xs : w.intersections) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (!xs.empty()) terms.push_back(std::move(xs));
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  std::vector<VertexSet> values;
  for (const auto& xs : terms) values.push_back(intersection_of(g, xs));
  std::vector<bool> keep(terms.size(), true);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (values[k].is_empty()) {
      keep[k] = false;
      continue;
    }
    for (std::size_t m = 0; m < terms.size() && keep[k]; ++m) {
      if (m == k || !keep[m] || values[m].is_empty()) continue;
      if (!values[k].subset_of(values[m])) continue;
      // Equal values keep the earlier term.
      if (values[k] != values[m] || m < k) keep[k] = false;
    }
  }
  LatticeWitness out{{}, w.finite_part};
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!keep[k]) continue;
    out.finite_part = out.finite_part.minus(values[k]);
    out.intersections.push_back(terms[k]);
  }
  return out;
}

std::optional<LatticeWitness> lattice_member(const Ultragraph& g,
                                             const VertexSet& s,
                                             const Caps& caps) {
  if (!s.same_universe(g.empty_set())) {
    throw Error(ErrorCode::UniverseMismatch,
                "set is not over the ultragraph's universe");
  }
  if (s.is_finite()) return LatticeWitness{{}, s};

  // Finite ranges, and any intersection involving one, are absorbed by the
  // finite part; only infinite ranges matter.
  std::vector<Ultragraph::RangeRep> ranges;
  for (auto& r : g.distinct_ranges()) {
    if (!r.set.is_finite()) ranges.push_back(std::move(r));
  }
  if (ranges.size() > caps.ranges) {
    throw Error(ErrorCode::TooManyRanges,
                std::to_string(ranges.size()) +
                    " distinct infinite ranges exceed the cap of " +
                    std::to_string(caps.ranges));
  }

  std::vector<std::vector<EdgeId>> found;
  VertexSet covered = g.empty_set();
  std::vector<std::size_t> chosen;
  // Depth-first over index sets in increasing order. A set whose
  // intersection already fits inside S is recorded and not extended, since
  // its supersets only give smaller values.
  auto dfs = [&](auto&& self, std::size_t from, const VertexSet& acc) -> void {
    for (std::size_t i = from; i < ranges.size(); ++i) {
      VertexSet next = chosen.empty() ? ranges[i].set : acc.intersect(ranges[i].set);
      if (next.is_finite()) continue;
      chosen.push_back(i);
      if (next.subset_of(s)) {
        std::vector<EdgeId> xs;
        for (auto c : chosen) xs.push_back(ranges[c].edge);
        found.push_back(std::move(xs));
        covered = covered.unite(next);
      } else {
        self(self, i + 1, next);
      }
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, g.all_vertices());

  VertexSet residual = s.minus(covered);
  if (!residual.is_finite()) return std::nullopt;
  return normalize_witness(g, LatticeWitness{std::move(found), residual});
}

std::set<VertexSet> lattice_closure_bruteforce(const Ultragraph& g,
                                               const Caps& caps) {
  const auto& u = g.universe();
  if (!u.is_finite() || u.core_size() > caps.closure || u.core_size() > 31) {
    throw Error(ErrorCode::TooLarge,
                "brute-force closure needs a finite universe of at most " +
                    std::to_string(caps.closure) + " vertices");
  }
  auto to_mask = [](const VertexSet& s) {
    std::uint32_t m = 0;
    for (auto c : s.core()) m |= 1u << c;
    return m;
  };
  std::set<std::uint32_t> closed{0};
  std::vector<std::uint32_t> work;
  auto add = [&](std::uint32_t m) {
    if (closed.insert(m).second) work.push_back(m);
  };
  for (std::uint32_t i = 0; i < u.core_size(); ++i) add(1u << i);
  for (const auto& r : g.distinct_ranges()) add(to_mask(r.set));
  while (!work.empty()) {
    auto m = work.back();
    work.pop_back();
    std::vector<std::uint32_t> snapshot(closed.begin(), closed.end());
    for (auto o : snapshot) {
      add(m | o);
      add(m & o);
    }
  }
  std::set<VertexSet> out;
  for (auto m : closed) {
    VertexSet s = g.empty_set();
    for (std::uint32_t i = 0; i < u.core_size(); ++i) {
      if (m & (1u << i)) s.insert(VertexId::core(i));
    }
    out.insert(std::move(s));
  }
  return out;
}

std::optional<LatticeWitness> is_unital(const Ultragraph& g, const Caps& caps) {
  return lattice_member(g, g.all_vertices(), caps);
}

}  // namespace ugkit
