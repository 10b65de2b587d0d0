#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugkit/rational.hpp"
#include "ugkit/ultragraph.hpp"

namespace ugkit {

// s_alpha p_A s_beta^*. An empty path stands for no partial isometry on that
// side. Canonical terms have A = A & r(alpha) & r(beta) and A nonempty.
struct SpanningTerm {
  Path alpha;
  Path beta;
  VertexSet set;

  int degree() const {
    return static_cast<int>(alpha.size()) - static_cast<int>(beta.size());
  }
  auto operator<=>(const SpanningTerm&) const = default;
};

// unit * 1 + sum of coeff * term. Zero coefficients are never stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement one() { return scalar(Rational(1)); }
  static AlgebraElement scalar(const Rational& c);
  static AlgebraElement of(const SpanningTerm& t, const Rational& c = 1);

  const Rational& unit() const { return unit_; }
  const std::map<SpanningTerm, Rational>& terms() const { return terms_; }
  bool is_zero() const { return unit_ == 0 && terms_.empty(); }

  void add_term(const SpanningTerm& t, const Rational& c);
  void add_unit(const Rational& c) { unit_ += c; }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Rational& c) const;

  AlgebraElement adjoint() const;
  // True if every term has the same degree |alpha| - |beta| (the unit counts
  // as degree 0).
  bool is_homogeneous() const;

  bool operator==(const AlgebraElement&) const = default;

 private:
  Rational unit_;
  std::map<SpanningTerm, Rational> terms_;
};

// Canonical term, or nullopt when the product it denotes is zero.
std::optional<SpanningTerm> make_term(const Ultragraph& g, Path alpha,
                                      VertexSet set, Path beta);

AlgebraElement gen_s(const Ultragraph& g, EdgeId e);
AlgebraElement gen_s_star(const Ultragraph& g, EdgeId e);
AlgebraElement gen_s_path(const Ultragraph& g, const Path& alpha);
// p_A; the caller is responsible for A lying in the lattice.
AlgebraElement gen_p(const Ultragraph& g, const VertexSet& a);
AlgebraElement gen_p(const Ultragraph& g, VertexId v);

std::optional<SpanningTerm> term_mul(const Ultragraph& g, const SpanningTerm& s,
                                     const SpanningTerm& t);
AlgebraElement mul(const Ultragraph& g, const AlgebraElement& a,
                   const AlgebraElement& b);

AlgebraElement normalize(const Ultragraph& g, const AlgebraElement& a,
                         unsigned depth = 0);

enum class Verdict { Equal, NotEqual, Unknown };
const char* to_string(Verdict v);

// Sound tri-state comparison. Tries normalization depths 0..depth, then
// refutes through the path-space representation when one exists.
Verdict equals(const Ultragraph& g, const AlgebraElement& a,
               const AlgebraElement& b, unsigned depth = 0);

struct Support {
  bool finite = false;
  std::vector<EdgeId> edges;  // when finite
};

Support support_AXY(const Ultragraph& g, const std::vector<EdgeId>& xs,
                    const std::vector<EdgeId>& ys);

struct ElResult {
  enum class Kind { Holds, NotApplicable, Fails } kind = Kind::Holds;
  std::vector<EdgeId> support;
  AlgebraElement residual;
};

ElResult el_check(const Ultragraph& g, const std::vector<EdgeId>& xs,
                  const std::vector<EdgeId>& ys);

// Images of the generators of a target ultragraph with finitely many
// vertices and edges. p_A for a finite set is the sum of the p_v.
struct CkAssignment {
  std::map<EdgeId, AlgebraElement> s;
  std::map<VertexId, AlgebraElement> p;
};

struct CkInstance {
  std::string axiom;
  std::string instance;
  Verdict verdict = Verdict::Unknown;
};

struct CkReport {
  std::vector<CkInstance> instances;

  std::size_t count(Verdict v) const;
  bool all_equal() const { return count(Verdict::Equal) == instances.size(); }
};

CkReport verify_ck_assignment(const Ultragraph& target,
                              const CkAssignment& assignment,
                              const Ultragraph& source, unsigned depth = 0);

// The identity assignment of g's own generators.
CkAssignment identity_assignment(const Ultragraph& g);

std::string format_term(const Ultragraph& g, const SpanningTerm& t);
std::string format_element(const Ultragraph& g, const AlgebraElement& a);

}  // namespace ugkit
