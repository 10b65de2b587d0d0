#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ugkit/ultragraph.hpp"

namespace ugkit {

class Matrix01 {
 public:
  Matrix01() = default;
  explicit Matrix01(std::size_t n);
  Matrix01(std::vector<std::string> labels, std::vector<std::uint8_t> entries);
  static Matrix01 from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  std::uint8_t at(std::size_t i, std::size_t j) const {
    return entries_[i * size() + j];
  }
  void set(std::size_t i, std::size_t j, bool v) {
    entries_[i * size() + j] = v ? 1 : 0;
  }
  // 1-based index of the first identically zero row.
  std::optional<std::size_t> first_zero_row() const;

  // Entry-wise equality; labels are not compared.
  bool same_entries(const Matrix01& other) const {
    return entries_ == other.entries_;
  }
  bool operator==(const Matrix01&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> entries_;
};

struct DirectedGraph {
  struct Edge {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
  };
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct SingularVertices {
  VertexSet sinks;
  std::vector<VertexId> infinite_emitters;

  bool none() const { return sinks.is_empty() && infinite_emitters.empty(); }
};

// Either Holds, or Fails with a witness loop.
struct LoopVerdict {
  bool holds = true;
  Path witness;
};

struct GraphLoopVerdict {
  bool holds = true;
  std::vector<std::size_t> witness;  // edge indices of the graph
};

SingularVertices singular_vertices(const Ultragraph& g);

Matrix01 edge_matrix(const Ultragraph& g);
Ultragraph ultragraph_from_matrix(const Matrix01& a,
                                  const std::string& name = "from_matrix");
DirectedGraph graph_from_matrix(const Matrix01& a);
Ultragraph ultragraph_from_graph(const DirectedGraph& h);

// All composable paths of length 1..max_len, shortest first and then
// lexicographic in edge order. Family and tail edges take part only when
// `index_cap` is given.
std::vector<Path> enumerate_paths(const Ultragraph& g, std::size_t max_len,
                                  std::optional<std::uint64_t> index_cap = {});

bool is_path(const Ultragraph& g, const Path& p);
bool is_loop(const Ultragraph& g, const Path& p);

struct ExitWitness {
  enum class Kind { Edge, Sink } kind = Kind::Edge;
  std::size_t position = 0;  // i with the exit at r(alpha_i), 0-based
  EdgeId edge;
  VertexId sink;
};

// An exit of a loop, if any: an edge leaving some r(alpha_i) other than
// alpha_{i+1} (cyclically), or a sink inside some r(alpha_i).
std::optional<ExitWitness> find_exit(const Ultragraph& g, const Path& loop);

LoopVerdict condition_l(const Ultragraph& g);
LoopVerdict condition_l_bruteforce(const Ultragraph& g, std::size_t max_len);
GraphLoopVerdict condition_l_graph(const DirectedGraph& h);

std::string path_name(const Ultragraph& g, const Path& p);

}  // namespace ugkit
