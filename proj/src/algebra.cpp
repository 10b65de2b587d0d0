#include "ugkit/algebra.hpp"

#include <algorithm>
#include <tuple>

#include "ugkit/approx.hpp"
#include "ugkit/core.hpp"
#include "ugkit/lattice.hpp"
#include "ugkit/repr.hpp"

namespace ugkit {

AlgebraElement AlgebraElement::scalar(const Rational& c) {
  AlgebraElement a;
  a.unit_ = c;
  return a;
}

AlgebraElement AlgebraElement::of(const SpanningTerm& t, const Rational& c) {
  AlgebraElement a;
  a.add_term(t, c);
  return a;
}

void AlgebraElement::add_term(const SpanningTerm& t, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  unit_ += o.unit_;
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  unit_ -= o.unit_;
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  out += o;
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement out = *this;
  out -= o;
  return out;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(-1); }

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  if (c == 0) return {};
  AlgebraElement out = *this;
  out.unit_ *= c;
  for (auto& [t, v] : out.terms_) v *= c;
  return out;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out;
  out.unit_ = conj(unit_);
  for (const auto& [t, c] : terms_) {
    out.add_term(SpanningTerm{t.beta, t.alpha, t.set}, conj(c));
  }
  return out;
}

bool AlgebraElement::is_homogeneous() const {
  std::optional<int> deg;
  if (unit_ != 0) deg = 0;
  for (const auto& [t, c] : terms_) {
    if (deg && *deg != t.degree()) return false;
    deg = t.degree();
  }
  return true;
}

namespace {

// Term without the path checks; paths are known to be composable.
std::optional<SpanningTerm> term_of(const Ultragraph& g, Path alpha,
                                    VertexSet set, Path beta) {
  if (!alpha.empty()) set = set.intersect(g.range(alpha.back()));
  if (!beta.empty()) set = set.intersect(g.range(beta.back()));
  if (set.is_empty()) return std::nullopt;
  return SpanningTerm{std::move(alpha), std::move(beta), std::move(set)};
}

Path concat(const Path& a, Path::const_iterator from, Path::const_iterator to) {
  Path out = a;
  out.insert(out.end(), from, to);
  return out;
}

bool starts_with(const Path& p, const Path& prefix) {
  return p.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), p.begin());
}

}  // namespace

std::optional<SpanningTerm> make_term(const Ultragraph& g, Path alpha,
                                      VertexSet set, Path beta) {
  if (!alpha.empty() && !is_path(g, alpha)) return std::nullopt;
  if (!beta.empty() && !is_path(g, beta)) return std::nullopt;
  return term_of(g, std::move(alpha), std::move(set), std::move(beta));
}

AlgebraElement gen_s(const Ultragraph& g, EdgeId e) {
  return gen_s_path(g, Path{e});
}

AlgebraElement gen_s_star(const Ultragraph& g, EdgeId e) {
  return gen_s(g, e).adjoint();
}

AlgebraElement gen_s_path(const Ultragraph& g, const Path& alpha) {
  if (alpha.empty()) return {};
  auto t = make_term(g, alpha, g.range(alpha.back()), {});
  return t ? AlgebraElement::of(*t) : AlgebraElement{};
}

AlgebraElement gen_p(const Ultragraph& g, const VertexSet& a) {
  auto t = term_of(g, {}, a, {});
  return t ? AlgebraElement::of(*t) : AlgebraElement{};
}

AlgebraElement gen_p(const Ultragraph& g, VertexId v) {
  return gen_p(g, g.singleton(v));
}

std::optional<SpanningTerm> term_mul(const Ultragraph& g, const SpanningTerm& s,
                                     const SpanningTerm& t) {
  const Path& alpha = s.alpha;
  const Path& beta = s.beta;
  const Path& gamma = t.alpha;
  const Path& delta = t.beta;
  const VertexSet& a = s.set;
  const VertexSet& b = t.set;

  if (beta.empty() && gamma.empty()) {
    return term_of(g, alpha, a.intersect(b), delta);
  }
  if (beta.empty()) {
    // p_A s_gamma = s_gamma when s(gamma) lies in A
    if (!a.contains(g.source(gamma.front()))) return std::nullopt;
    return term_of(g, concat(alpha, gamma.begin(), gamma.end()), b, delta);
  }
  if (gamma.empty()) {
    if (!b.contains(g.source(beta.front()))) return std::nullopt;
    return term_of(g, alpha, a, concat(delta, beta.begin(), beta.end()));
  }
  if (starts_with(gamma, beta)) {
    if (gamma.size() == beta.size()) {
      return term_of(g, alpha, a.intersect(b), delta);
    }
    auto rest = gamma.begin() + static_cast<std::ptrdiff_t>(beta.size());
    if (!a.contains(g.source(*rest))) return std::nullopt;
    return term_of(g, concat(alpha, rest, gamma.end()), b, delta);
  }
  if (starts_with(beta, gamma)) {
    auto rest = beta.begin() + static_cast<std::ptrdiff_t>(gamma.size());
    if (!b.contains(g.source(*rest))) return std::nullopt;
    return term_of(g, alpha, a, concat(delta, rest, beta.end()));
  }
  return std::nullopt;
}

AlgebraElement mul(const Ultragraph& g, const AlgebraElement& a,
                   const AlgebraElement& b) {
  AlgebraElement out = AlgebraElement::scalar(a.unit() * b.unit());
  if (a.unit() != 0) {
    for (const auto& [t, c] : b.terms()) out.add_term(t, a.unit() * c);
  }
  if (b.unit() != 0) {
    for (const auto& [t, c] : a.terms()) out.add_term(t, b.unit() * c);
  }
  for (const auto& [s, c] : a.terms()) {
    for (const auto& [t, d] : b.terms()) {
      if (auto st = term_mul(g, s, t)) out.add_term(*st, c * d);
    }
  }
  return out;
}

namespace {

using TermMap = std::map<SpanningTerm, Rational>;

class Normalizer {
 public:
  Normalizer(const Ultragraph& g, std::optional<bool> unital)
      : g_(g), unital_(unital) {}

  AlgebraElement run(const AlgebraElement& a, unsigned depth) {
    TermMap terms = a.terms();
    Rational unit = a.unit();
    if (unit != 0 && unital_.value_or(false)) {
      add(terms, SpanningTerm{{}, {}, g_.all_vertices()}, unit);
      unit = 0;
    }
    settle(terms);
    for (unsigned d = 0; d < depth && !terms.empty(); ++d) {
      expand(terms);
      settle(terms);
    }
    AlgebraElement out = AlgebraElement::scalar(unit);
    for (const auto& [t, c] : terms) out.add_term(t, c);
    return out;
  }

 private:
  static void add(TermMap& m, const SpanningTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = m.try_emplace(t, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) m.erase(it);
  }

  bool in_lattice(const VertexSet& s) {
    if (s.is_finite()) return true;
    auto it = member_.find(s);
    if (it != member_.end()) return it->second;
    bool ok = false;
    try {
      ok = lattice_member(g_, s).has_value();
    } catch (const Error&) {
      ok = false;
    }
    member_.emplace(s, ok);
    return ok;
  }

  void settle(TermMap& terms) {
    do {
      canonicalize(terms);
    } while (collapse(terms));
  }

  // Rewrites each (alpha, beta) group as a sum over the level sets of its
  // coefficient function, when those sets are lattice elements.
  void canonicalize(TermMap& terms) {
    TermMap out;
    auto it = terms.begin();
    while (it != terms.end()) {
      auto end = it;
      std::vector<std::pair<VertexSet, Rational>> group;
      while (end != terms.end() && end->first.alpha == it->first.alpha &&
             end->first.beta == it->first.beta) {
        group.emplace_back(end->first.set, end->second);
        ++end;
      }
      const Path& alpha = it->first.alpha;
      const Path& beta = it->first.beta;
      if (group.size() == 1) {
        out.emplace(it->first, it->second);
      } else if (auto levels = level_sets(group)) {
        for (auto& [set, c] : *levels) {
          add(out, SpanningTerm{alpha, beta, std::move(set)}, c);
        }
      } else {
        for (auto& [set, c] : group) add(out, SpanningTerm{alpha, beta, set}, c);
      }
      it = end;
    }
    terms = std::move(out);
  }

  std::optional<std::vector<std::pair<VertexSet, Rational>>> level_sets(
      const std::vector<std::pair<VertexSet, Rational>>& group) {
    std::vector<std::pair<VertexSet, Rational>> atoms;
    for (const auto& [a, c] : group) {
      std::vector<std::pair<VertexSet, Rational>> next;
      VertexSet rest = a;
      for (const auto& [part, val] : atoms) {
        VertexSet in = part.intersect(a);
        VertexSet out = part.minus(a);
        if (!in.is_empty()) next.emplace_back(std::move(in), val + c);
        if (!out.is_empty()) next.emplace_back(std::move(out), val);
        rest = rest.minus(part);
      }
      if (!rest.is_empty()) next.emplace_back(std::move(rest), c);
      atoms = std::move(next);
    }
    std::map<Rational, VertexSet> levels;
    for (auto& [part, val] : atoms) {
      if (val == 0) continue;
      auto [lv, inserted] = levels.try_emplace(val, part);
      if (!inserted) lv->second = lv->second.unite(part);
    }
    std::vector<std::pair<VertexSet, Rational>> out;
    for (auto& [val, set] : levels) {
      if (!in_lattice(set)) return std::nullopt;
      out.emplace_back(std::move(set), val);
    }
    return out;
  }

  // Replaces a complete equal-coefficient family
  // sum over s(e) = v of c s_{alpha e} p_{r(e)} s_{beta e}^*
  // by c s_alpha p_{v} s_beta^*, for regular v.
  bool collapse(TermMap& terms) {
    using Key = std::tuple<Path, Path, VertexId>;
    std::map<Key, std::map<EdgeId, std::pair<Rational, const SpanningTerm*>>> found;
    for (const auto& [t, c] : terms) {
      if (t.alpha.empty() || t.beta.empty()) continue;
      const EdgeId e = t.alpha.back();
      if (t.beta.back() != e || t.set != g_.range(e)) continue;
      Key key{Path(t.alpha.begin(), t.alpha.end() - 1),
              Path(t.beta.begin(), t.beta.end() - 1), g_.source(e)};
      found[key].emplace(e, std::make_pair(c, &t));
    }
    std::vector<std::pair<SpanningTerm, Rational>> removals;
    std::vector<std::pair<SpanningTerm, Rational>> additions;
    for (const auto& [key, edges] : found) {
      const VertexId v = std::get<2>(key);
      auto em = emissions(v);
      if (!em.is_regular() || em.edges.size() != edges.size()) continue;
      const Rational& c = edges.begin()->second.first;
      bool complete = true;
      for (auto e : em.edges) {
        auto it = edges.find(e);
        if (it == edges.end() || it->second.first != c) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      for (const auto& [e, entry] : edges) removals.emplace_back(*entry.second, c);
      if (auto t = term_of(g_, std::get<0>(key), g_.singleton(v), std::get<1>(key))) {
        additions.emplace_back(std::move(*t), c);
      }
    }
    if (removals.empty()) return false;
    for (auto& [t, c] : removals) add(terms, t, -c);
    for (auto& [t, c] : additions) add(terms, t, c);
    return true;
  }

  // p_A = sum over regular v in A of sum over s(e) = v of s_e s_e^*, plus
  // p of the singular part, for finite A.
  void expand(TermMap& terms) {
    TermMap out;
    for (const auto& [t, c] : terms) {
      if (!t.set.is_finite()) {
        add(out, t, c);
        continue;
      }
      VertexSet singular = g_.empty_set();
      for (auto v : t.set.elements()) {
        auto em = emissions(v);
        if (!em.is_regular()) {
          singular.insert(v);
          continue;
        }
        for (auto e : em.edges) {
          Path a = t.alpha;
          a.push_back(e);
          Path b = t.beta;
          b.push_back(e);
          if (auto nt = term_of(g_, std::move(a), g_.range(e), std::move(b))) {
            add(out, *nt, c);
          }
        }
      }
      if (!singular.is_empty()) add(out, SpanningTerm{t.alpha, t.beta, singular}, c);
    }
    terms = std::move(out);
  }

  const Emissions& emissions(VertexId v) {
    auto it = emissions_.find(v);
    if (it == emissions_.end()) it = emissions_.emplace(v, g_.emissions(v)).first;
    return it->second;
  }

  const Ultragraph& g_;
  std::optional<bool> unital_;
  std::map<VertexSet, bool> member_;
  std::map<VertexId, Emissions> emissions_;
};

std::optional<bool> unital_of(const Ultragraph& g) {
  if (g.universe().is_finite()) return true;
  try {
    return is_unital(g).has_value();
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool representable(const Ultragraph& g) {
  return g.universe().is_finite() && !g.has_infinite_edges() && !find_loop(g);
}

// Shares the unitality verdict and the path-space representation across
// many queries on one ultragraph.
class Decider {
 public:
  explicit Decider(const Ultragraph& g) : g_(g), unital_(unital_of(g)) {}

  Verdict equals(const AlgebraElement& a, const AlgebraElement& b,
                 unsigned depth) {
    AlgebraElement diff = a - b;
    AlgebraElement residual = Normalizer(g_, unital_).run(diff, depth);
    if (residual.is_zero()) return Verdict::Equal;
    if (residual.unit() != 0 && unital_ == false) return Verdict::NotEqual;
    if (const auto* fam = rep()) {
      if (!evaluate(g_, diff, *fam).is_zero_matrix()) return Verdict::NotEqual;
    }
    return Verdict::Unknown;
  }

 private:
  const MatrixCKFamily* rep() {
    if (!rep_tried_) {
      rep_tried_ = true;
      if (representable(g_)) rep_ = path_space_rep(g_);
    }
    return rep_ ? &*rep_ : nullptr;
  }

  const Ultragraph& g_;
  std::optional<bool> unital_;
  bool rep_tried_ = false;
  std::optional<MatrixCKFamily> rep_;
};

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::NotEqual || b == Verdict::NotEqual) return Verdict::NotEqual;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Equal;
}

}  // namespace

AlgebraElement normalize(const Ultragraph& g, const AlgebraElement& a,
                         unsigned depth) {
  return Normalizer(g, unital_of(g)).run(a, depth);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "Equal";
    case Verdict::NotEqual:
      return "NotEqual";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "?";
}

Verdict equals(const Ultragraph& g, const AlgebraElement& a,
               const AlgebraElement& b, unsigned depth) {
  return Decider(g).equals(a, b, depth);
}

Support support_AXY(const Ultragraph& g, const std::vector<EdgeId>& xs,
                    const std::vector<EdgeId>& ys) {
  EdgeSet es = e_set(g, xs, ys);
  return {es.finite, std::move(es.edges)};
}

ElResult el_check(const Ultragraph& g, const std::vector<EdgeId>& xs,
                  const std::vector<EdgeId>& ys) {
  if (!g.sinks().is_empty()) {
    throw Error(ErrorCode::NoSinksViolated,
                "Exel-Laca relations need an ultragraph without sinks");
  }
  ElResult out;
  Support sup = support_AXY(g, xs, ys);
  if (!sup.finite) {
    out.kind = ElResult::Kind::NotApplicable;
    return out;
  }
  out.support = sup.edges;
  AlgebraElement lhs = AlgebraElement::one();
  for (auto x : xs) lhs = mul(g, lhs, mul(g, gen_s_star(g, x), gen_s(g, x)));
  for (auto y : ys) {
    lhs = mul(g, lhs,
              AlgebraElement::one() - mul(g, gen_s_star(g, y), gen_s(g, y)));
  }
  AlgebraElement rhs;
  for (auto j : sup.edges) rhs += mul(g, gen_s(g, j), gen_s_star(g, j));
  out.residual = normalize(g, lhs - rhs, 1);
  out.kind = out.residual.is_zero() ? ElResult::Kind::Holds : ElResult::Kind::Fails;
  return out;
}

std::size_t CkReport::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(),
                    [v](const CkInstance& i) { return i.verdict == v; }));
}

CkAssignment identity_assignment(const Ultragraph& g) {
  if (!g.universe().is_finite()) {
    throw Error(ErrorCode::Unsupported,
                "generator assignments need a finite vertex set");
  }
  CkAssignment out;
  for (auto e : g.edges()) out.s.emplace(e, gen_s(g, e));
  for (std::uint32_t i = 0; i < g.universe().core_size(); ++i) {
    out.p.emplace(VertexId::core(i), gen_p(g, VertexId::core(i)));
  }
  return out;
}

CkReport verify_ck_assignment(const Ultragraph& target,
                              const CkAssignment& assignment,
                              const Ultragraph& source, unsigned depth) {
  if (!target.universe().is_finite() || target.has_infinite_edges()) {
    throw Error(ErrorCode::Unsupported,
                "assignment checks need a target with finitely many vertices "
                "and edges");
  }
  const auto edges = target.edges();
  const std::size_t nv = target.universe().core_size();
  auto s_of = [&](EdgeId e) -> const AlgebraElement& {
    auto it = assignment.s.find(e);
    if (it == assignment.s.end()) {
      throw Error(ErrorCode::MissingGenerator,
                  "no image for s_" + target.edge_name(e));
    }
    return it->second;
  };
  auto p_of = [&](VertexId v) -> const AlgebraElement& {
    auto it = assignment.p.find(v);
    if (it == assignment.p.end()) {
      throw Error(ErrorCode::MissingGenerator,
                  "no image for p_" + target.vertex_name(v));
    }
    return it->second;
  };
  for (auto e : edges) s_of(e);
  for (std::uint32_t i = 0; i < nv; ++i) p_of(VertexId::core(i));

  Decider d(source);
  CkReport report;
  auto eq = [&](const AlgebraElement& a, const AlgebraElement& b) {
    return d.equals(a, b, depth);
  };
  auto m = [&](const AlgebraElement& a, const AlgebraElement& b) {
    return mul(source, a, b);
  };
  auto vname = [&](std::uint32_t i) { return target.vertex_name(VertexId::core(i)); };
  auto ename = [&](EdgeId e) { return target.edge_name(e); };
  const AlgebraElement zero;

  for (std::uint32_t i = 0; i < nv; ++i) {
    const auto& p = p_of(VertexId::core(i));
    Verdict v = combine(eq(p.adjoint(), p), eq(m(p, p), p));
    report.instances.push_back({"projection", "p_" + vname(i), v});
  }
  for (std::uint32_t i = 0; i < nv; ++i) {
    for (std::uint32_t j = i + 1; j < nv; ++j) {
      Verdict v = eq(m(p_of(VertexId::core(i)), p_of(VertexId::core(j))), zero);
      report.instances.push_back(
          {"orthogonal projections", "p_" + vname(i) + " p_" + vname(j), v});
    }
  }
  std::map<EdgeId, AlgebraElement> ss_star;
  for (auto e : edges) ss_star.emplace(e, m(s_of(e), s_of(e).adjoint()));
  for (auto e : edges) {
    const auto& s = s_of(e);
    AlgebraElement p_range;
    for (auto v : target.range(e).elements()) p_range += p_of(v);
    report.instances.push_back(
        {"range", "s_" + ename(e) + "^* s_" + ename(e), eq(m(s.adjoint(), s), p_range)});
    report.instances.push_back(
        {"partial isometry", "s_" + ename(e), eq(m(ss_star.at(e), s), s)});
    report.instances.push_back({"source", "s_" + ename(e),
                                eq(m(p_of(target.source(e)), ss_star.at(e)),
                                   ss_star.at(e))});
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      Verdict v = eq(m(s_of(edges[i]).adjoint(), s_of(edges[j])), zero);
      report.instances.push_back({"orthogonal ranges",
                                  "s_" + ename(edges[i]) + " s_" + ename(edges[j]), v});
    }
  }
  for (std::uint32_t i = 0; i < nv; ++i) {
    auto em = target.emissions(VertexId::core(i));
    if (!em.is_regular()) continue;
    AlgebraElement sum;
    for (auto e : em.edges) sum += ss_star.at(e);
    report.instances.push_back(
        {"sum", "p_" + vname(i), eq(p_of(VertexId::core(i)), sum)});
  }
  return report;
}

std::string format_term(const Ultragraph& g, const SpanningTerm& t) {
  auto path = [&](const Path& p) {
    std::string out;
    for (auto e : p) {
      if (!out.empty()) out += ' ';
      out += g.edge_name(e);
    }
    return out;
  };
  std::string out;
  if (!t.alpha.empty()) out += "s(" + path(t.alpha) + ") ";
  out += "p[" + format_set(g.universe(), t.set) + "]";
  if (!t.beta.empty()) out += " s(" + path(t.beta) + ")*";
  return out;
}

std::string format_element(const Ultragraph& g, const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  auto emit = [&](const Rational& c, const std::string& body) {
    Rational mag = c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag < 0) mag = -mag;
    if (body.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + " ";
      out += body;
    }
  };
  if (a.unit() != 0) emit(a.unit(), "");
  for (const auto& [t, c] : a.terms()) emit(c, format_term(g, t));
  return out;
}

}  // namespace ugkit
