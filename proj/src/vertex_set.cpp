#include "ugkit/vertex_set.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>

#include "ugkit/error.hpp"

namespace ugkit {

namespace {

using Indices = std::vector<std::uint64_t>;

Indices merge_union(const Indices& a, const Indices& b) {
  Indices out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Indices merge_intersect(const Indices& a, const Indices& b) {
  Indices out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

Indices merge_minus(const Indices& a, const Indices& b) {
  Indices out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

RayPart ray_union(const RayPart& a, const RayPart& b) {
  if (!a.cofinite && !b.cofinite) {
    return {false, merge_union(a.indices, b.indices)};
  }
  if (a.cofinite && b.cofinite) {
    return {true, merge_intersect(a.indices, b.indices)};
  }
  const RayPart& fin = a.cofinite ? b : a;
  const RayPart& cof = a.cofinite ? a : b;
  return {true, merge_minus(cof.indices, fin.indices)};
}

RayPart ray_complement(const RayPart& a) { return {!a.cofinite, a.indices}; }

RayPart ray_intersect(const RayPart& a, const RayPart& b) {
  if (!a.cofinite && !b.cofinite) {
    return {false, merge_intersect(a.indices, b.indices)};
  }
  if (a.cofinite && b.cofinite) {
    return {true, merge_union(a.indices, b.indices)};
  }
  const RayPart& fin = a.cofinite ? b : a;
  const RayPart& cof = a.cofinite ? a : b;
  return {false, merge_minus(fin.indices, cof.indices)};
}

// Smallest index >= 1 contained in the part, skipping `skip` if given.
std::optional<std::uint64_t> ray_first(const RayPart& p,
                                       std::optional<std::uint64_t> skip) {
  if (!p.cofinite) {
    for (auto i : p.indices) {
      if (!skip || i != *skip) return i;
    }
    return std::nullopt;
  }
  std::uint64_t i = 1;
  for (;; ++i) {
    if (skip && i == *skip) continue;
    if (!std::binary_search(p.indices.begin(), p.indices.end(), i)) return i;
  }
}

}  // namespace

Universe::Universe(std::vector<std::string> core, std::vector<std::string> rays)
    : core_(std::move(core)), rays_(std::move(rays)) {}

std::string Universe::name(VertexId v) const {
  if (v.in_core()) return core_.at(v.index);
  return rays_.at(v.ray()) + std::to_string(v.index);
}

bool Universe::contains(VertexId v) const {
  if (v.in_core()) return v.index < core_.size();
  return v.ray() < rays_.size() && v.index >= 1;
}

std::optional<std::uint32_t> Universe::find_ray(std::string_view name) const {
  for (std::uint32_t r = 0; r < rays_.size(); ++r) {
    if (rays_[r] == name) return r;
  }
  return std::nullopt;
}

std::optional<VertexId> Universe::find(std::string_view name) const {
  for (std::uint32_t i = 0; i < core_.size(); ++i) {
    if (core_[i] == name) return VertexId::core(i);
  }
  std::optional<VertexId> found;
  for (std::uint32_t r = 0; r < rays_.size(); ++r) {
    const auto& rn = rays_[r];
    if (name.size() <= rn.size() || name.substr(0, rn.size()) != rn) continue;
    auto digits = name.substr(rn.size());
    if (digits.front() == '0') continue;
    std::uint64_t idx = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) continue;
    if (found) return std::nullopt;  // ambiguous between two rays
    found = VertexId::on_ray(r, idx);
  }
  return found;
}

bool RayPart::contains(std::uint64_t i) const {
  bool listed = std::binary_search(indices.begin(), indices.end(), i);
  return cofinite ? !listed : listed;
}

VertexSet VertexSet::empty(const Universe& u) {
  VertexSet s;
  s.core_size_ = static_cast<std::uint32_t>(u.core_size());
  s.rays_.resize(u.ray_count());
  return s;
}

VertexSet VertexSet::all(const Universe& u) { return empty(u).complement(); }

VertexSet VertexSet::whole_ray(const Universe& u, std::uint32_t ray) {
  VertexSet s = empty(u);
  s.rays_.at(ray).cofinite = true;
  return s;
}

VertexSet VertexSet::empty_like(const VertexSet& shape) {
  VertexSet s;
  s.core_size_ = shape.core_size_;
  s.rays_.resize(shape.rays_.size());
  return s;
}

VertexSet VertexSet::all_like(const VertexSet& shape) {
  return empty_like(shape).complement();
}

VertexSet VertexSet::of(const Universe& u, const std::vector<VertexId>& vs) {
  VertexSet s = empty(u);
  for (auto v : vs) s.insert(v);
  return s;
}

void VertexSet::insert(VertexId v) {
  if (v.in_core()) {
    auto pos = static_cast<std::uint32_t>(v.index);
    auto it = std::lower_bound(core_.begin(), core_.end(), pos);
    if (it == core_.end() || *it != pos) core_.insert(it, pos);
    return;
  }
  auto& part = rays_.at(v.ray());
  auto it = std::lower_bound(part.indices.begin(), part.indices.end(), v.index);
  bool listed = it != part.indices.end() && *it == v.index;
  if (part.cofinite) {
    if (listed) part.indices.erase(it);
  } else if (!listed) {
    part.indices.insert(it, v.index);
  }
}

bool VertexSet::contains(VertexId v) const {
  if (v.in_core()) {
    return std::binary_search(core_.begin(), core_.end(),
                              static_cast<std::uint32_t>(v.index));
  }
  if (v.ray() >= rays_.size() || v.index == 0) return false;
  return rays_[v.ray()].contains(v.index);
}

bool VertexSet::is_empty() const {
  if (!core_.empty()) return false;
  for (const auto& p : rays_) {
    if (p.cofinite || !p.indices.empty()) return false;
  }
  return true;
}

bool VertexSet::is_finite() const {
  for (const auto& p : rays_) {
    if (p.cofinite) return false;
  }
  return true;
}

std::size_t VertexSet::count() const {
  std::size_t n = core_.size();
  for (const auto& p : rays_) n += p.indices.size();
  return n;
}

std::vector<VertexId> VertexSet::elements() const {
  std::vector<VertexId> out;
  out.reserve(count());
  for (auto c : core_) out.push_back(VertexId::core(c));
  for (std::uint32_t r = 0; r < rays_.size(); ++r) {
    for (auto i : rays_[r].indices) out.push_back(VertexId::on_ray(r, i));
  }
  return out;
}

std::optional<VertexId> VertexSet::first() const {
  if (!core_.empty()) return VertexId::core(core_.front());
  for (std::uint32_t r = 0; r < rays_.size(); ++r) {
    if (auto i = ray_first(rays_[r], std::nullopt)) {
      return VertexId::on_ray(r, *i);
    }
  }
  return std::nullopt;
}

std::optional<VertexId> VertexSet::first_other_than(VertexId skip) const {
  for (auto c : core_) {
    if (!(skip.in_core() && skip.index == c)) return VertexId::core(c);
  }
  for (std::uint32_t r = 0; r < rays_.size(); ++r) {
    std::optional<std::uint64_t> sk;
    if (!skip.in_core() && skip.ray() == r) sk = skip.index;
    if (auto i = ray_first(rays_[r], sk)) return VertexId::on_ray(r, *i);
  }
  return std::nullopt;
}

bool VertexSet::same_universe(const VertexSet& other) const {
  return core_size_ == other.core_size_ && rays_.size() == other.rays_.size();
}

void VertexSet::check_same(const VertexSet& other) const {
  if (!same_universe(other)) {
    throw Error(ErrorCode::UniverseMismatch,
                "vertex sets belong to different universes");
  }
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  check_same(other);
  VertexSet out = empty_like(*this);
  std::set_union(core_.begin(), core_.end(), other.core_.begin(),
                 other.core_.end(), std::back_inserter(out.core_));
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    out.rays_[r] = ray_union(rays_[r], other.rays_[r]);
  }
  return out;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  check_same(other);
  VertexSet out = empty_like(*this);
  std::set_intersection(core_.begin(), core_.end(), other.core_.begin(),
                        other.core_.end(), std::back_inserter(out.core_));
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    out.rays_[r] = ray_intersect(rays_[r], other.rays_[r]);
  }
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet out = empty_like(*this);
  std::size_t k = 0;
  for (std::uint32_t c = 0; c < core_size_; ++c) {
    if (k < core_.size() && core_[k] == c) {
      ++k;
    } else {
      out.core_.push_back(c);
    }
  }
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    out.rays_[r] = ray_complement(rays_[r]);
  }
  return out;
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  check_same(other);
  VertexSet out = empty_like(*this);
  std::set_difference(core_.begin(), core_.end(), other.core_.begin(),
                      other.core_.end(), std::back_inserter(out.core_));
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    out.rays_[r] = ray_intersect(rays_[r], ray_complement(other.rays_[r]));
  }
  return out;
}

bool VertexSet::subset_of(const VertexSet& other) const {
  check_same(other);
  if (!std::includes(other.core_.begin(), other.core_.end(), core_.begin(),
                     core_.end())) {
    return false;
  }
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    auto rest = ray_intersect(rays_[r], ray_complement(other.rays_[r]));
    if (rest.cofinite || !rest.indices.empty()) return false;
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
  return !intersect(other).is_empty();
}

std::size_t VertexSet::hash() const {
  std::size_t h = core_size_ * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (auto c : core_) mix(c);
  for (const auto& p : rays_) {
    mix(p.cofinite ? 0xc0f1 : 0xf1);
    for (auto i : p.indices) mix(i);
  }
  return h;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  return a.unite(b);
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
  return a.intersect(b);
}

VertexSet set_complement(const VertexSet& a) { return a.complement(); }

std::string format_set(const Universe& u, const VertexSet& s) {
  std::string finite = "{";
  std::string tails;
  for (auto c : s.core()) finite += " " + u.core_names()[c];
  for (std::uint32_t r = 0; r < s.rays().size(); ++r) {
    const auto& part = s.rays()[r];
    if (!part.cofinite) {
      for (auto i : part.indices) finite += " " + u.name(VertexId::on_ray(r, i));
      continue;
    }
    tails += " + ray(" + u.ray_names()[r] + ")";
    if (!part.indices.empty()) {
      tails += " \\ {";
      for (auto i : part.indices) tails += " " + u.name(VertexId::on_ray(r, i));
      tails += " }";
    }
  }
  finite += " }";
  bool finite_empty = finite == "{ }";
  if (finite_empty && !tails.empty()) return tails.substr(3);
  return finite + tails;
}

}  // namespace ugkit
