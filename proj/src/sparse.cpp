#include "ugkit/sparse.hpp"

#include <utility>

namespace ugkit {

std::size_t rank(const RationalMatrix& m) {
  std::vector<std::map<std::size_t, Rational>> rows = m.row_data();
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (rows[i].count(col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Rational lead = rows[r].at(col);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      const Rational factor = it->second / lead;
      for (const auto& [j, v] : rows[r]) {
        Rational& x = rows[i][j];
        x -= factor * v;
        if (x == 0) rows[i].erase(j);
      }
    }
    ++r;
  }
  return r;
}

std::string format_matrix(const RationalMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      const Rational* v = m.find(i, j);
      out += v ? v->get_str() : "0";
    }
    out += '\n';
  }
  return out;
}

}  // namespace ugkit
