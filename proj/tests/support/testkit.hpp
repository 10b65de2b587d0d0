// Fixture loading, seeded generators and brute-force oracles shared by the
// unit tests and the acceptance runner.
#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ugkit/core.hpp"
#include "ugkit/document.hpp"
#include "ugkit/repr.hpp"
#include "ugkit/ultragraph.hpp"

#ifndef UGKIT_CORPUS_DIR
#define UGKIT_CORPUS_DIR "corpus"
#endif

namespace testkit {

using namespace ugkit;

inline std::string corpus_path(const std::string& file) {
  return std::string(UGKIT_CORPUS_DIR) + "/" + file;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Ultragraph fixture(const std::string& name) {
  return parse_document(slurp(corpus_path(name + ".ug")));
}

// The named fixtures UG1..UG7 and the UG7-style window fixture.
inline std::vector<std::string> fixture_names() {
  return {"UG1", "UG2", "UG3", "UG4", "UG5", "UG6", "UG7", "UG7_window"};
}

// Every .ug document of the corpus, sorted by file name.
inline std::vector<std::string> corpus_documents() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(UGKIT_CORPUS_DIR)) {
    if (e.path().extension() == ".ug") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), eng_);
  }

 private:
  std::mt19937_64 eng_;
};

inline Matrix01 random_matrix(Rng& rng, int n, bool no_zero_rows) {
  Matrix01 a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool any = false;
    for (int j = 0; j < n; ++j) {
      bool v = rng.coin(0.4);
      a.set(i, j, v);
      any = any || v;
    }
    if (no_zero_rows && !any) a.set(i, rng.uniform(0, n - 1), true);
  }
  return a;
}

struct GenOptions {
  int max_vertices = 6;
  int max_edges = 6;
  bool no_sinks = false;
  bool loop_free = false;
};

// A finite ultragraph with named edges only. With loop_free, every range lies
// strictly after its source in a hidden order, so the edge relation is
// acyclic.
inline Ultragraph random_finite(Rng& rng, const GenOptions& o) {
  int nv = o.no_sinks ? rng.uniform(1, std::min(o.max_vertices, o.max_edges))
                      : rng.uniform(1, o.max_vertices);
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));
  std::vector<int> order(nv);
  for (int i = 0; i < nv; ++i) order[i] = i;
  rng.shuffle(order);  // order[k]: vertex at position k of the hidden order

  Universe u(names, {});
  auto vid = [](int i) { return VertexId::core(static_cast<std::uint32_t>(i)); };
  std::vector<int> sources;
  if (o.no_sinks) {
    int ne = rng.uniform(nv, o.max_edges);
    for (int i = 0; i < nv; ++i) sources.push_back(i);
    while (static_cast<int>(sources.size()) < ne) sources.push_back(rng.uniform(0, nv - 1));
    rng.shuffle(sources);
  } else if (!o.loop_free || nv >= 2) {
    int ne = rng.uniform(0, o.max_edges);
    for (int i = 0; i < ne; ++i) {
      int pos = o.loop_free ? rng.uniform(0, nv - 2) : rng.uniform(0, nv - 1);
      sources.push_back(o.loop_free ? order[pos] : pos);
    }
  }
  std::vector<int> position(nv);
  for (int k = 0; k < nv; ++k) position[order[k]] = k;

  std::vector<NamedEdge> edges;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    int s = sources[i];
    std::vector<int> allowed;
    for (int v = 0; v < nv; ++v) {
      if (!o.loop_free || position[v] > position[s]) allowed.push_back(v);
    }
    VertexSet r = VertexSet::empty(u);
    for (int v : allowed) {
      if (rng.coin(0.4)) r.insert(vid(v));
    }
    if (r.is_empty()) r.insert(vid(allowed[rng.uniform(0, static_cast<int>(allowed.size()) - 1)]));
    edges.push_back({"e" + std::to_string(i), vid(s), r});
  }
  return Ultragraph("random", u, std::move(edges));
}

// Bitmask view of a finite ultragraph for the oracles below.
struct Bits {
  int n = 0;
  std::vector<int> source;
  std::vector<std::uint32_t> range;
};

inline Bits bits(const Ultragraph& g) {
  Bits b;
  b.n = static_cast<int>(g.universe().core_size());
  for (auto e : g.edges()) {
    b.source.push_back(static_cast<int>(g.source(e).index));
    std::uint32_t m = 0;
    const VertexSet r = g.range(e);
    for (auto c : r.core()) m |= 1u << c;
    b.range.push_back(m);
  }
  return b;
}

inline std::uint32_t to_mask(const VertexSet& s) {
  std::uint32_t m = 0;
  for (auto c : s.core()) m |= 1u << c;
  return m;
}

// Closure of singletons and ranges under union and intersection, as masks.
// Family ranges repeat with the presentation, so edges up to its span cover
// them all. Finite universes only.
inline std::set<std::uint32_t> lattice_oracle(const Ultragraph& g) {
  std::set<std::uint32_t> sets;
  for (std::uint32_t v = 0; v < g.universe().core_size(); ++v) sets.insert(1u << v);
  for (auto e : g.edges_up_to(g.presentation_span())) sets.insert(to_mask(g.range(e)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> cur(sets.begin(), sets.end());
    for (auto x : cur) {
      for (auto y : cur) {
        grew |= sets.insert(x | y).second;
        grew |= sets.insert(x & y).second;
      }
    }
  }
  sets.insert(0);
  return sets;
}

// Condition (L) by exhaustive search over closed paths of length <= max_len:
// a loop fails when every range along it is a singleton whose only emission
// is the next edge of the loop.
inline bool condition_l_oracle(const Ultragraph& g, int max_len) {
  Bits b = bits(g);
  const int m = static_cast<int>(b.source.size());
  std::vector<int> emits(b.n, 0);
  for (int e = 0; e < m; ++e) ++emits[b.source[e]];
  std::vector<int> path;
  bool holds = true;
  auto no_exit = [&]() {
    for (std::size_t i = 0; i < path.size(); ++i) {
      int next = path[(i + 1) % path.size()];
      std::uint32_t r = b.range[path[i]];
      if (r != (1u << b.source[next])) return false;
      if (emits[b.source[next]] != 1) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self) -> void {
    if (!holds) return;
    int last = path.back();
    if (b.range[last] >> b.source[path.front()] & 1u) {
      if (no_exit()) holds = false;
    }
    if (static_cast<int>(path.size()) == max_len) return;
    for (int f = 0; f < m; ++f) {
      if (b.range[last] >> b.source[f] & 1u) {
        path.push_back(f);
        self(self);
        path.pop_back();
      }
    }
  };
  for (int e = 0; e < m && holds; ++e) {
    path = {e};
    dfs(dfs);
  }
  return holds;
}

// All subsets of `items` with at most `k` elements, including the empty one.
template <class T>
std::vector<std::vector<T>> subsets_up_to(const std::vector<T>& items, std::size_t k) {
  std::vector<std::vector<T>> out;
  const std::size_t n = items.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > k) continue;
    std::vector<T> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) s.push_back(items[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

// The UG7_window family: P_w has rank 1, each enumerated g_j (j <= window)
// maps (w) to its own vector at v0, and one extra vector at v0 lies outside
// every range.
inline MatrixCKFamily window_family(const Ultragraph& g, std::uint64_t window) {
  MatrixCKFamily fam;
  const VertexId v0 = *g.find_vertex("v0");
  const VertexId w = *g.find_vertex("w");
  fam.labels.push_back("(w)");
  fam.anchors.push_back(w);
  fam.degrees.push_back(0);
  for (std::uint64_t j = 1; j <= window; ++j) {
    fam.labels.push_back("(g@" + std::to_string(j) + ", w)");
    fam.anchors.push_back(v0);
    fam.degrees.push_back(1);
  }
  fam.labels.push_back("(v0)");
  fam.anchors.push_back(v0);
  fam.degrees.push_back(0);
  for (std::uint64_t j = 1; j <= window; ++j) {
    RationalMatrix s(fam.dim(), fam.dim());
    s.set(j, 0, Rational(1));
    fam.s.emplace(EdgeId::family(0, j), s);
  }
  return fam;
}

}  // namespace testkit
