#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ugkit {

// Region 0 is the finite core; region k > 0 is ray k - 1. Core vertices are
// addressed by position, ray vertices by an index starting at 1.
struct VertexId {
  static constexpr std::uint32_t kCore = 0;

  std::uint32_t region = kCore;
  std::uint64_t index = 0;

  static VertexId core(std::uint32_t pos) { return {kCore, pos}; }
  static VertexId on_ray(std::uint32_t ray, std::uint64_t idx) {
    return {ray + 1, idx};
  }

  bool in_core() const { return region == kCore; }
  std::uint32_t ray() const { return region - 1; }

  auto operator<=>(const VertexId&) const = default;
};

// The vertex universe: named core vertices followed by named rays t1, t2, ...
class Universe {
 public:
  Universe() = default;
  Universe(std::vector<std::string> core, std::vector<std::string> rays);

  std::size_t core_size() const { return core_.size(); }
  std::size_t ray_count() const { return rays_.size(); }
  bool is_finite() const { return rays_.empty(); }

  const std::vector<std::string>& core_names() const { return core_; }
  const std::vector<std::string>& ray_names() const { return rays_; }

  std::string name(VertexId v) const;
  bool contains(VertexId v) const;

  // Resolves a vertex name: a core name, or a ray name followed by a positive
  // index without leading zeros.
  std::optional<VertexId> find(std::string_view name) const;
  std::optional<std::uint32_t> find_ray(std::string_view name) const;

  bool operator==(const Universe&) const = default;

 private:
  std::vector<std::string> core_;
  std::vector<std::string> rays_;
};

struct RayPart {
  bool cofinite = false;
  std::vector<std::uint64_t> indices;  // members, or exclusions when cofinite

  bool contains(std::uint64_t i) const;
  auto operator<=>(const RayPart&) const = default;
};

// A subset of the universe which is finite on the core and finite or cofinite
// on each ray. All operations keep the canonical (sorted, unique) form.
class VertexSet {
 public:
  VertexSet() = default;

  static VertexSet empty(const Universe& u);
  static VertexSet all(const Universe& u);
  static VertexSet of(const Universe& u, const std::vector<VertexId>& vs);
  static VertexSet whole_ray(const Universe& u, std::uint32_t ray);
  static VertexSet empty_like(const VertexSet& shape);
  static VertexSet all_like(const VertexSet& shape);

  std::size_t core_size() const { return core_size_; }
  std::size_t ray_count() const { return rays_.size(); }

  const std::vector<std::uint32_t>& core() const { return core_; }
  const std::vector<RayPart>& rays() const { return rays_; }

  bool contains(VertexId v) const;
  bool is_empty() const;
  bool is_finite() const;
  // Number of elements; only meaningful when is_finite().
  std::size_t count() const;
  // Elements in universe order; only valid when is_finite().
  std::vector<VertexId> elements() const;
  // Smallest element in universe order, if any.
  std::optional<VertexId> first() const;
  // Smallest element different from `skip`, if any.
  std::optional<VertexId> first_other_than(VertexId skip) const;

  bool same_universe(const VertexSet& other) const;
  bool subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  VertexSet unite(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  VertexSet complement() const;

  void insert(VertexId v);

  std::size_t hash() const;

  auto operator<=>(const VertexSet&) const = default;

 private:
  void check_same(const VertexSet& other) const;

  std::uint32_t core_size_ = 0;
  std::vector<std::uint32_t> core_;
  std::vector<RayPart> rays_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersect(const VertexSet& a, const VertexSet& b);
VertexSet set_complement(const VertexSet& a);

// Document syntax: `{ v w t3 }` for the finite part, then `+ ray(t)` or
// `+ ray(t) \ { t1 }` per cofinite ray. The empty set prints as `{ }`.
std::string format_set(const Universe& u, const VertexSet& s);

}  // namespace ugkit

template <>
struct std::hash<ugkit::VertexSet> {
  std::size_t operator()(const ugkit::VertexSet& s) const { return s.hash(); }
};
