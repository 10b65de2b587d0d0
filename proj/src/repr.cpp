#include "ugkit/repr.hpp"

#include <algorithm>
#include <set>

#include "ugkit/core.hpp"
#include "ugkit/lattice.hpp"

namespace ugkit {

RationalMatrix MatrixCKFamily::p(const VertexSet& a) const {
  RationalMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (anchors[i] && a.contains(*anchors[i])) m.set(i, i, Rational(1));
  }
  return m;
}

RationalMatrix MatrixCKFamily::p(VertexId v) const {
  RationalMatrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (anchors[i] == v) m.set(i, i, Rational(1));
  }
  return m;
}

const RationalMatrix& MatrixCKFamily::s_of(EdgeId e) const {
  auto it = s.find(e);
  if (it == s.end()) {
    throw Error(ErrorCode::MissingGenerator, "the family carries no operator for this edge");
  }
  return it->second;
}

std::optional<Path> find_loop(const Ultragraph& g) {
  const auto edges = g.edges();
  std::vector<VertexSet> ranges;
  for (auto e : edges) ranges.push_back(g.range(e));
  std::vector<int> state(edges.size(), 0);
  std::vector<std::size_t> stack;
  std::optional<Path> found;
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    state[i] = 1;
    stack.push_back(i);
    for (std::size_t j = 0; j < edges.size() && !found; ++j) {
      if (!ranges[i].contains(g.source(edges[j]))) continue;
      if (state[j] == 1) {
        auto it = std::find(stack.begin(), stack.end(), j);
        Path p;
        for (; it != stack.end(); ++it) p.push_back(edges[*it]);
        found = p;
      } else if (state[j] == 0) {
        self(self, j);
      }
    }
    stack.pop_back();
    state[i] = 2;
  };
  for (std::size_t i = 0; i < edges.size() && !found; ++i) {
    if (state[i] == 0) dfs(dfs, i);
  }
  return found;
}

MatrixCKFamily path_space_rep(const Ultragraph& g) {
  if (!g.universe().is_finite() || g.has_infinite_edges()) {
    throw Error(ErrorCode::Unsupported,
                "path-space representations need finitely many vertices and edges");
  }
  if (auto loop = find_loop(g)) {
    throw Error(ErrorCode::HasLoop, "HasLoop(" + path_name(g, *loop) + ")");
  }
  const auto edges = g.edges();
  const auto sinks = g.sinks().elements();
  MatrixCKFamily fam;
  std::map<std::pair<Path, VertexId>, std::size_t> index;
  auto add = [&](const Path& p, VertexId w) {
    index.emplace(std::make_pair(p, w), fam.labels.size());
    if (p.empty()) {
      fam.labels.push_back("(" + g.vertex_name(w) + ")");
      fam.anchors.push_back(w);
    } else {
      fam.labels.push_back("(" + path_name(g, p) + ", " + g.vertex_name(w) + ")");
      fam.anchors.push_back(g.source(p.front()));
    }
    fam.degrees.push_back(static_cast<int>(p.size()));
  };
  for (auto w : sinks) add({}, w);
  for (const auto& p : enumerate_paths(g, edges.size())) {
    const VertexSet r = g.range(p.back());
    for (auto w : sinks) {
      if (r.contains(w)) add(p, w);
    }
  }
  for (auto e : edges) {
    RationalMatrix m(fam.dim(), fam.dim());
    const VertexSet r = g.range(e);
    for (const auto& [key, col] : index) {
      const auto& [p, w] = key;
      const VertexId start = p.empty() ? w : g.source(p.front());
      if (!r.contains(start)) continue;
      Path q{e};
      q.insert(q.end(), p.begin(), p.end());
      m.set(index.at({q, w}), col, Rational(1));
    }
    fam.s.emplace(e, std::move(m));
  }
  return fam;
}

namespace {

std::string set_text(const Ultragraph& g, const VertexSet& s) {
  return format_set(g.universe(), s);
}

}  // namespace

CkCheckReport ck_check(const Ultragraph& g, const MatrixCKFamily& fam,
                       const CkCheckOptions& opts) {
  CkCheckReport rep;
  auto check = [&](bool ok, const std::string& axiom, const std::string& inst) {
    ++rep.instances;
    if (!ok) rep.defects.push_back({axiom, inst});
  };
  const std::size_t n = fam.dim();
  const RationalMatrix zero(n, n);

  std::vector<EdgeId> window;
  for (const auto& [e, m] : fam.s) {
    if (!g.contains(e)) {
      rep.defects.push_back({"edges", "operator for an edge outside the ultragraph"});
      continue;
    }
    if (m.rows() != n || m.cols() != n) {
      rep.defects.push_back({"edges", "s_" + g.edge_name(e) + " has the wrong shape"});
      continue;
    }
    window.push_back(e);
  }
  if (g.has_infinite_edges()) {
    rep.notices.push_back("only the " + std::to_string(window.size()) +
                          " edges carried by the family are checked");
  } else {
    for (auto e : g.edges()) {
      if (!fam.s.count(e)) rep.defects.push_back({"edges", "missing s_" + g.edge_name(e)});
    }
  }

  // Lattice relations on singletons and ranges.
  std::vector<VertexSet> sets;
  for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
    sets.push_back(g.singleton(VertexId::core(i)));
  }
  for (auto e : window) sets.push_back(g.range(e));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  check(fam.p(g.empty_set()).is_zero_matrix(), "empty set", "P_{ }");
  for (const auto& a : sets) {
    RationalMatrix pa = fam.p(a);
    check(pa.adjoint() == pa && pa * pa == pa, "projection", "P_" + set_text(g, a));
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      RationalMatrix pa = fam.p(sets[i]);
      RationalMatrix pb = fam.p(sets[j]);
      RationalMatrix meet = fam.p(sets[i].intersect(sets[j]));
      const std::string inst = set_text(g, sets[i]) + " and " + set_text(g, sets[j]);
      check(pa * pb == meet, "intersection", inst);
      check(fam.p(sets[i].unite(sets[j])) == pa + pb - meet, "union", inst);
    }
  }

  std::map<EdgeId, RationalMatrix> ss_star;
  for (auto e : window) {
    const auto& s = fam.s.at(e);
    const std::string name = "s_" + g.edge_name(e);
    check(s.adjoint() * s == fam.p(g.range(e)), "range", name);
    ss_star.emplace(e, s * s.adjoint());
    check(fam.p(g.source(e)) * ss_star.at(e) == ss_star.at(e), "source", name);
  }
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      check((fam.s.at(window[i]).adjoint() * fam.s.at(window[j])).is_zero_matrix(),
            "orthogonal ranges",
            "s_" + g.edge_name(window[i]) + " s_" + g.edge_name(window[j]));
    }
  }

  std::set<VertexId> emitting;
  for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
    emitting.insert(VertexId::core(i));
  }
  for (const auto& e : g.named_edges()) emitting.insert(e.source);
  for (auto v : emitting) {
    auto em = g.emissions(v);
    if (!em.is_regular()) continue;
    if (std::find(opts.skip_sum.begin(), opts.skip_sum.end(), v) != opts.skip_sum.end()) {
      rep.notices.push_back("sum relation at " + g.vertex_name(v) + " not checked");
      continue;
    }
    RationalMatrix sum(n, n);
    bool complete = true;
    for (auto e : em.edges) {
      auto it = ss_star.find(e);
      if (it == ss_star.end()) {
        complete = false;
        break;
      }
      sum = sum + it->second;
    }
    check(complete && sum == fam.p(v), "sum", "P_" + g.vertex_name(v));
  }

  if (g.universe().is_finite()) {
    for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
      check(!fam.p(VertexId::core(i)).is_zero_matrix(), "nonvanishing",
            "P_" + g.vertex_name(VertexId::core(i)));
    }
  } else {
    for (const auto& a : sets) {
      check(!fam.p(a).is_zero_matrix(), "nonvanishing", "P_" + set_text(g, a));
    }
  }
  return rep;
}

RationalMatrix evaluate_path(const MatrixCKFamily& fam, const Path& alpha) {
  RationalMatrix m = RationalMatrix::identity(fam.dim(), Rational(1));
  for (auto e : alpha) m = m * fam.s_of(e);
  return m;
}

RationalMatrix evaluate(const Ultragraph& g, const AlgebraElement& a,
                        const MatrixCKFamily& fam) {
  RationalMatrix out(fam.dim(), fam.dim());
  if (a.unit() != 0) {
    bool unital = g.universe().is_finite() || is_unital(g).has_value();
    if (!unital) {
      throw Error(ErrorCode::NonUnitalUnit,
                  "a formal unit has no image in a nonunital algebra");
    }
    out = fam.p(g.all_vertices()).scaled(a.unit());
  }
  for (const auto& [t, c] : a.terms()) {
    RationalMatrix m = evaluate_path(fam, t.alpha) * fam.p(t.set) *
                       evaluate_path(fam, t.beta).adjoint();
    out = out + m.scaled(c);
  }
  return out;
}

CyclotomicMatrix gauge_unitary(const MatrixCKFamily& fam,
                               const std::shared_ptr<const CyclotomicField>& f,
                               long power) {
  CyclotomicMatrix u(fam.dim(), fam.dim());
  for (std::size_t i = 0; i < fam.dim(); ++i) {
    u.set(i, i, Cyclotomic::zeta(f, power * fam.degrees[i]));
  }
  return u;
}

GaugeReport gauge_check(const Ultragraph& g, const MatrixCKFamily& fam,
                        unsigned k, long power) {
  auto f = std::make_shared<const CyclotomicField>(k);
  auto lift = [&](const RationalMatrix& m) {
    return map_entries<Cyclotomic>(
        m, [&](const Rational& q) { return Cyclotomic::from_rational(f, q); });
  };
  const CyclotomicMatrix u = gauge_unitary(fam, f, power);
  const CyclotomicMatrix u_star = u.adjoint();
  const Cyclotomic z = Cyclotomic::zeta(f, power);
  GaugeReport rep;
  ++rep.instances;
  if (!(u * u_star == CyclotomicMatrix::identity(fam.dim(), Cyclotomic::from_rational(f, 1)))) {
    rep.failures.push_back("U is not unitary");
  }
  for (const auto& [e, s] : fam.s) {
    ++rep.instances;
    const CyclotomicMatrix se = lift(s);
    if (!(u * se * u_star == se.scaled(z))) {
      rep.failures.push_back("U s_" + g.edge_name(e) + " U^* != z s_" + g.edge_name(e));
    }
  }
  std::set<std::optional<VertexId>> anchors(fam.anchors.begin(), fam.anchors.end());
  for (const auto& v : anchors) {
    if (!v) continue;
    ++rep.instances;
    const CyclotomicMatrix p = lift(fam.p(*v));
    if (!(u * p * u_star == p)) {
      rep.failures.push_back("U P_" + g.vertex_name(*v) + " U^* != P_" + g.vertex_name(*v));
    }
  }
  return rep;
}

namespace {

void require_monomial(const MatrixCKFamily& fam) {
  for (const auto& [e, m] : fam.s) {
    std::set<std::size_t> cols;
    for (const auto& row : m.row_data()) {
      if (row.size() > 1) {
        throw Error(ErrorCode::Unsupported, "tail extension needs 0/1 monomial operators");
      }
      for (const auto& [j, v] : row) {
        if (v != 1 || !cols.insert(j).second) {
          throw Error(ErrorCode::Unsupported, "tail extension needs 0/1 monomial operators");
        }
      }
    }
  }
}

RationalMatrix embed(const RationalMatrix& m, std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [j, v] : m.row_data()[i]) out.set(i, j, v);
  }
  return out;
}

}  // namespace

ExtendedFamily extend_family(const MatrixCKFamily& fam, const DesingMap& m,
                             std::uint64_t n) {
  require_monomial(fam);
  ExtendedFamily out{truncate(m.result, n), {}};
  const Truncation& t = out.truncation;
  const Ultragraph& full = m.result;
  MatrixCKFamily& ext = out.family;

  ext.labels = fam.labels;
  ext.degrees = fam.degrees;
  for (const auto& a : fam.anchors) {
    ext.anchors.push_back(a ? t.vertex(full, *a) : std::nullopt);
  }

  struct Entry {
    EdgeId edge;
    std::size_t row, col;
  };
  std::vector<Entry> entries;
  auto new_vector = [&](std::size_t like, VertexId anchor, int degree) {
    ext.labels.push_back(fam.labels[like] + "|" + t.graph.vertex_name(anchor));
    ext.anchors.push_back(anchor);
    ext.degrees.push_back(degree);
    return ext.labels.size() - 1;
  };

  for (const auto& tail : m.tails) {
    const std::uint32_t core0 = t.tail_core_offset[tail.tail];
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < fam.dim(); ++i) {
      if (fam.anchors[i] == tail.base) block.push_back(i);
    }
    // copies[i][b]: the copy of original vector b in the slot of v_i.
    std::vector<std::map<std::size_t, std::size_t>> copies(n + 1);
    for (auto b : block) copies[0][b] = b;
    std::vector<std::set<std::size_t>> live(n + 1);
    live[0] = std::set<std::size_t>(block.begin(), block.end());

    if (tail.emitter) {
      for (std::uint64_t j = 1; j <= n; ++j) {
        const EdgeId gj = *tail.g(j);
        const RationalMatrix& s = fam.s_of(gj);
        live[j] = live[j - 1];
        for (std::size_t r = 0; r < s.rows(); ++r) {
          if (s.row_data()[r].empty()) continue;
          if (!live[j - 1].count(r)) {
            throw Error(ErrorCode::Unsupported,
                        "ranges of the enumerated emissions are not orthogonal "
                        "inside P_" + m.original.vertex_name(tail.base));
          }
          live[j].erase(r);
        }
        // H_n lies inside H_j, so an early exhaustion settles it.
        if (live[j].empty()) {
          throw Error(ErrorCode::TruncationEmpty,
                      "P_" + m.original.vertex_name(tail.base) + " - R_" +
                          std::to_string(j) + " = 0");
        }
      }
    } else {
      for (std::uint64_t j = 1; j <= n; ++j) live[j] = live[0];
    }

    for (std::uint64_t i = 1; i <= n; ++i) {
      const VertexId vi = VertexId::core(core0 + static_cast<std::uint32_t>(i - 1));
      for (auto b : live[i]) {
        copies[i][b] = new_vector(b, vi, fam.degrees[b] - static_cast<int>(i));
      }
      const EdgeId ei = *t.edge(full, EdgeId::tail_e(tail.tail, i));
      for (auto b : live[i]) entries.push_back({ei, copies[i - 1].at(b), copies[i].at(b)});
    }
    if (tail.emitter) {
      for (std::uint64_t j = 1; j <= n; ++j) {
        const EdgeId fj = *t.edge(full, EdgeId::tail_f(tail.tail, j));
        const RationalMatrix& s = fam.s_of(*tail.g(j));
        for (std::size_t r = 0; r < s.rows(); ++r) {
          for (const auto& [c, v] : s.row_data()[r]) {
            entries.push_back({fj, copies[j - 1].at(r), c});
          }
        }
        ext.s.emplace(fj, RationalMatrix());
      }
    }
    for (std::uint64_t i = 1; i <= n; ++i) {
      ext.s.emplace(*t.edge(full, EdgeId::tail_e(tail.tail, i)), RationalMatrix());
    }
  }

  const std::size_t dim = ext.labels.size();
  for (auto& [e, mat] : ext.s) mat = RationalMatrix(dim, dim);
  for (const auto& en : entries) ext.s.at(en.edge).set(en.row, en.col, Rational(1));
  for (const auto& [e, mat] : fam.s) {
    if (m.original.contains(e)) {
      const TailInfo* tail = m.tail_at(m.original.source(e));
      if (tail && tail->emitter) continue;
    }
    auto image = m.image(e);
    if (!image) continue;
    if (auto te = t.edge(full, *image)) ext.s[*te] = embed(mat, dim);
  }
  return out;
}

RestrictedFamily restrict_family(const MatrixCKFamily& fam, const DesingMap& m,
                                 const Truncation& t) {
  RestrictedFamily out;
  const Universe& ou = m.original.universe();
  const Ultragraph& full = m.result;
  MatrixCKFamily& r = out.family;
  r.labels = fam.labels;
  r.degrees = fam.degrees;
  for (const auto& a : fam.anchors) {
    std::optional<VertexId> back;
    if (a && a->in_core() && a->index < ou.core_size()) {
      back = a;
    } else if (a && !a->in_core()) {
      for (std::uint32_t ray = 0; ray < ou.ray_count(); ++ray) {
        if (t.ray_map[ray] == a->ray()) back = VertexId::on_ray(ray, a->index);
      }
    }
    r.anchors.push_back(back);
  }
  if (fam.dim() == 0) out.notices.push_back("empty family");

  for (std::uint32_t i = 0; i < m.original.named_edges().size(); ++i) {
    auto image = m.named_image[i];
    if (!image) continue;
    auto te = t.edge(full, *image);
    if (te && fam.s.count(*te)) r.s.emplace(EdgeId::named(i), fam.s.at(*te));
  }
  for (const auto& tail : m.tails) {
    if (!tail.emitter) continue;
    for (std::uint64_t j = 1; j <= t.depth; ++j) {
      const EdgeId gj = *tail.g(j);
      RationalMatrix prod = RationalMatrix::identity(fam.dim(), Rational(1));
      for (auto e : alpha_path(m, gj)) prod = prod * fam.s_of(*t.edge(full, e));
      r.s.emplace(gj, std::move(prod));
    }
    out.check_options.skip_sum.push_back(tail.base);
    out.notices.push_back("sum relation at " + m.original.vertex_name(tail.base) +
                          " is not checkable through " + std::to_string(t.depth) +
                          " of its infinitely many edges");
  }
  return out;
}

MatrixCKFamily leading_block(const MatrixCKFamily& fam, std::size_t n) {
  MatrixCKFamily out;
  out.labels.assign(fam.labels.begin(), fam.labels.begin() + static_cast<std::ptrdiff_t>(n));
  out.anchors.assign(fam.anchors.begin(), fam.anchors.begin() + static_cast<std::ptrdiff_t>(n));
  out.degrees.assign(fam.degrees.begin(), fam.degrees.begin() + static_cast<std::ptrdiff_t>(n));
  for (const auto& [e, m] : fam.s) out.s.emplace(e, m.block(n));
  return out;
}

bool agrees_with(const MatrixCKFamily& full, const MatrixCKFamily& part) {
  if (full.labels != part.labels || full.anchors != part.anchors) return false;
  for (const auto& [e, m] : part.s) {
    auto it = full.s.find(e);
    if (it == full.s.end() || !(it->second == m)) return false;
  }
  return true;
}

}  // namespace ugkit
