#pragma once

#include <cstddef>
#include <string_view>

namespace ugkit {

// Limits on exponential sweeps. Defaults can be overridden through the
// UGKIT_CAPS environment variable, e.g. UGKIT_CAPS="ranges=24,approx=18".
struct Caps {
  std::size_t ranges = 20;        // distinct infinite ranges in lattice_member
  std::size_t approx = 16;        // |F| in approximation_graph
  std::size_t closure = 12;       // vertices in lattice_closure_bruteforce

  static Caps defaults() { return Caps{}; }
  static Caps from_env();
  // Applies "key=value,key=value" overrides; unknown keys throw Error(Usage).
  void apply(std::string_view spec);
};

}  // namespace ugkit
