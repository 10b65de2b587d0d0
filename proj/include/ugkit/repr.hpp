#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugkit/algebra.hpp"
#include "ugkit/cyclotomic.hpp"
#include "ugkit/desing.hpp"
#include "ugkit/sparse.hpp"

namespace ugkit {

// A finite-dimensional family whose projections are diagonal: P_A keeps the
// basis vectors anchored at a vertex of A.
struct MatrixCKFamily {
  std::vector<std::string> labels;
  std::vector<std::optional<VertexId>> anchors;
  std::vector<int> degrees;  // gauge grading
  std::map<EdgeId, RationalMatrix> s;

  std::size_t dim() const { return labels.size(); }
  RationalMatrix p(const VertexSet& a) const;
  RationalMatrix p(VertexId v) const;
  const RationalMatrix& s_of(EdgeId e) const;  // throws MissingGenerator
};

// Basis: sinks in declaration order, then (alpha, w) by path length, edge
// order and sink order. Throws HasLoop on a loop and Unsupported when the
// ultragraph is not finite.
MatrixCKFamily path_space_rep(const Ultragraph& g);

// An edge cycle, if any, as a loop path.
std::optional<Path> find_loop(const Ultragraph& g);

struct CkDefect {
  std::string axiom;
  std::string instance;
};

struct CkCheckReport {
  std::size_t instances = 0;
  std::vector<CkDefect> defects;
  std::vector<std::string> notices;

  bool passed() const { return defects.empty(); }
};

struct CkCheckOptions {
  // Vertices exempt from the sum relation, e.g. an infinite emitter seen
  // through a finite window of its edges.
  std::vector<VertexId> skip_sum;
};

// Exact check of the relations on the edges the family carries, plus
// nonvanishing of every P_v (finite universes) or every P_r(e).
CkCheckReport ck_check(const Ultragraph& g, const MatrixCKFamily& fam,
                       const CkCheckOptions& opts = {});

// Throws NonUnitalUnit if the element has a unit part and the ultragraph is
// not unital.
RationalMatrix evaluate(const Ultragraph& g, const AlgebraElement& a,
                        const MatrixCKFamily& fam);
RationalMatrix evaluate_path(const MatrixCKFamily& fam, const Path& alpha);

using CyclotomicMatrix = SparseMatrix<Cyclotomic>;

// diag(z^degree) for z = zeta_k^power.
CyclotomicMatrix gauge_unitary(const MatrixCKFamily& fam,
                               const std::shared_ptr<const CyclotomicField>& f,
                               long power = 1);

struct GaugeReport {
  std::size_t instances = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

// U S_e U^* = z S_e and U P_v U^* = P_v for z = zeta_k^power.
GaugeReport gauge_check(const Ultragraph& g, const MatrixCKFamily& fam,
                        unsigned k, long power = 1);

struct ExtendedFamily {
  Truncation truncation;
  MatrixCKFamily family;  // over truncation.graph; original basis first
};

// Requires a family with 0/1 monomial partial isometries. For emitter tails
// it uses S_{g_j} for j <= n; throws TruncationEmpty when P_{v0} - R_n = 0.
ExtendedFamily extend_family(const MatrixCKFamily& fam, const DesingMap& m,
                             std::uint64_t n);

struct RestrictedFamily {
  MatrixCKFamily family;  // over m.original, same space as the input
  std::vector<std::string> notices;
  CkCheckOptions check_options;
};

RestrictedFamily restrict_family(const MatrixCKFamily& fam, const DesingMap& m,
                                 const Truncation& t);

// The family compressed to its leading n basis vectors.
MatrixCKFamily leading_block(const MatrixCKFamily& fam, std::size_t n);

// Same labels and anchors, and every operator of `part` equals the one
// `full` carries for that edge.
bool agrees_with(const MatrixCKFamily& full, const MatrixCKFamily& part);

}  // namespace ugkit
