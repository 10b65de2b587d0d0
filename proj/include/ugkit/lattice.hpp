#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ugkit/caps.hpp"
#include "ugkit/ultragraph.hpp"

namespace ugkit {

// S = union over k of (intersection of r(e), e in intersections[k]) union F.
struct LatticeWitness {
  std::vector<std::vector<EdgeId>> intersections;
  VertexSet finite_part;

  bool operator==(const LatticeWitness&) const = default;
};

struct LatticeElement {
  VertexSet set;
  LatticeWitness witness;
};

VertexSet evaluate(const Ultragraph& g, const LatticeWitness& w);

// Membership in the lattice generated by singletons and ranges. Returns the
// canonical witness, or nullopt if S is not a member.
std::optional<LatticeWitness> lattice_member(const Ultragraph& g,
                                             const VertexSet& s,
                                             const Caps& caps = Caps::from_env());

LatticeWitness normalize_witness(const Ultragraph& g, const LatticeWitness& w);

// Oracle: closes singletons and ranges under union and intersection. The
// result always contains the empty set.
std::set<VertexSet> lattice_closure_bruteforce(
    const Ultragraph& g, const Caps& caps = Caps::from_env());

// Witness for the whole vertex set, or nullopt when nonunital.
std::optional<LatticeWitness> is_unital(const Ultragraph& g,
                                        const Caps& caps = Caps::from_env());

}  // namespace ugkit
