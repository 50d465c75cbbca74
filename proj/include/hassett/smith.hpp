#pragma once

#include <utility>
#include <vector>

#include "hassett/rational.hpp"

namespace hassett {

/// Integer matrix stored as sparse rows (column-sorted, no explicit zeros).
struct IntegerMatrix {
  using Row = std::vector<std::pair<int, Integer>>;

  int rows = 0;
  int cols = 0;
  std::vector<Row> entries;

  explicit IntegerMatrix(int column_count = 0) : cols(column_count) {}
  static IntegerMatrix from_dense(const std::vector<std::vector<Integer>>& dense, int column_count = -1);

  void add_row(Row row);
  std::vector<std::vector<Integer>> dense() const;
};

/// Invariant factors d_1 | d_2 | ... | d_rank (all positive).
struct SmithForm {
  std::vector<Integer> factors;
  int rank = 0;

  bool operator==(const SmithForm&) const = default;
};

// Eliminates unit pivots on the sparse rows first, then finishes whatever is
// left with dense elimination.
SmithForm smith_normal_form(const IntegerMatrix& m);

// Plain dense elimination with minimal-absolute-value pivoting.
SmithForm smith_normal_form_dense(std::vector<std::vector<Integer>> a);

}  // namespace hassett
