#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugkit/error.hpp"
#include "ugkit/rational.hpp"

namespace ugkit {

// Row-major sparse matrix over an exact scalar type. T needs +, -, unary -,
// *, == and free functions is_zero(T) and conj(T). Zeros are never stored.
template <class T>
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, T>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols)
      : cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n, const T& one) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, one);
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Row>& row_data() const { return data_; }

  const T* find(std::size_t i, std::size_t j) const {
    auto it = data_[i].find(j);
    return it == data_[i].end() ? nullptr : &it->second;
  }

  void set(std::size_t i, std::size_t j, const T& v) {
    if (is_zero(v)) {
      data_[i].erase(j);
    } else {
      data_[i].insert_or_assign(j, v);
    }
  }

  void add(std::size_t i, std::size_t j, const T& v) {
    auto it = data_[i].find(j);
    if (it == data_[i].end()) {
      if (!is_zero(v)) data_[i].emplace(j, v);
      return;
    }
    it->second = it->second + v;
    if (is_zero(it->second)) data_[i].erase(it);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  bool is_zero_matrix() const { return nnz() == 0; }

  SparseMatrix operator+(const SparseMatrix& o) const {
    check_shape(o);
    SparseMatrix out = *this;
    for (std::size_t i = 0; i < o.rows(); ++i) {
      for (const auto& [j, v] : o.data_[i]) out.add(i, j, v);
    }
    return out;
  }

  SparseMatrix operator-(const SparseMatrix& o) const {
    check_shape(o);
    SparseMatrix out = *this;
    for (std::size_t i = 0; i < o.rows(); ++i) {
      for (const auto& [j, v] : o.data_[i]) out.add(i, j, T(-v));
    }
    return out;
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows()) {
      throw Error(ErrorCode::Usage, "matrix product with mismatched dimensions");
    }
    SparseMatrix out(rows(), o.cols());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& [k, a] : data_[i]) {
        for (const auto& [j, b] : o.data_[k]) out.add(i, j, a * b);
      }
    }
    return out;
  }

  SparseMatrix scaled(const T& c) const {
    SparseMatrix out(rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& [j, v] : data_[i]) out.set(i, j, c * v);
    }
    return out;
  }

  SparseMatrix adjoint() const {
    SparseMatrix out(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& [j, v] : data_[i]) out.set(j, i, conj(v));
    }
    return out;
  }

  // Leading principal n x n block.
  SparseMatrix block(std::size_t n) const {
    SparseMatrix out(n, n);
    for (std::size_t i = 0; i < n && i < rows(); ++i) {
      for (const auto& [j, v] : data_[i]) {
        if (j < n) out.set(i, j, v);
      }
    }
    return out;
  }

  bool operator==(const SparseMatrix& o) const {
    return cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  void check_shape(const SparseMatrix& o) const {
    if (rows() != o.rows() || cols_ != o.cols_) {
      throw Error(ErrorCode::Usage, "matrix sum with mismatched dimensions");
    }
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

template <class U, class T, class Fn>
SparseMatrix<U> map_entries(const SparseMatrix<T>& m, Fn fn) {
  SparseMatrix<U> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [j, v] : m.row_data()[i]) out.set(i, j, fn(v));
  }
  return out;
}

using RationalMatrix = SparseMatrix<Rational>;

std::size_t rank(const RationalMatrix& m);

// Dense text: one line per row, entries separated by single spaces.
std::string format_matrix(const RationalMatrix& m);

}  // namespace ugkit
