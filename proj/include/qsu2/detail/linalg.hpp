#pragma once

#include <optional>
#include <vector>

#include "qsu2/errors.hpp"
#include "qsu2/numeric.hpp"

namespace qsu2::detail {

// Exact solver for an overdetermined system M x = b whose columns are
// linearly independent. A square subsystem on independent rows is inverted
// once; solve() back-substitutes and then verifies every row.
class ColumnSpanSolver {
 public:
  ColumnSpanSolver() = default;

  // columns[j][i] is entry (i, j) of M.
  explicit ColumnSpanSolver(std::vector<std::vector<BigRational>> columns)
      : columns_(std::move(columns)) {
    const std::size_t rank = columns_.size();
    if (rank == 0) return;
    const std::size_t rows = columns_.front().size();

    // Greedy independent-row selection by incremental elimination.
    std::vector<std::vector<BigRational>> reduced;  // echelon rows
    std::vector<std::size_t> lead;                  // leading column per reduced row
    for (std::size_t i = 0; i < rows && pivots_.size() < rank; ++i) {
      std::vector<BigRational> row(rank);
      for (std::size_t j = 0; j < rank; ++j) row[j] = columns_[j][i];
      for (std::size_t r = 0; r < reduced.size(); ++r) {
        if (row[lead[r]] == 0) continue;
        BigRational f = row[lead[r]] / reduced[r][lead[r]];
        for (std::size_t j = 0; j < rank; ++j) row[j] -= f * reduced[r][j];
      }
      std::size_t l = 0;
      while (l < rank && row[l] == 0) ++l;
      if (l == rank) continue;
      reduced.push_back(std::move(row));
      lead.push_back(l);
      pivots_.push_back(i);
    }
    if (pivots_.size() != rank) throw InternalError("ColumnSpanSolver: columns are dependent");

    // Gauss-Jordan inverse of the pivot-row submatrix.
    std::vector<std::vector<BigRational>> a(rank, std::vector<BigRational>(2 * rank));
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t j = 0; j < rank; ++j) a[r][j] = columns_[j][pivots_[r]];
      a[r][rank + r] = 1;
    }
    for (std::size_t col = 0; col < rank; ++col) {
      std::size_t piv = col;
      while (a[piv][col] == 0) ++piv;
      std::swap(a[piv], a[col]);
      BigRational inv = 1 / a[col][col];
      for (auto& x : a[col]) x *= inv;
      for (std::size_t r = 0; r < rank; ++r) {
        if (r == col || a[r][col] == 0) continue;
        BigRational f = a[r][col];
        for (std::size_t j = 0; j < 2 * rank; ++j) a[r][j] -= f * a[col][j];
      }
    }
    inverse_.assign(rank, std::vector<BigRational>(rank));
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t j = 0; j < rank; ++j) inverse_[r][j] = a[r][rank + j];
  }

  std::optional<std::vector<BigRational>> solve(const std::vector<BigRational>& b) const {
    const std::size_t rank = columns_.size();
    std::vector<BigRational> x(rank);
    for (std::size_t r = 0; r < rank; ++r) {
      BigRational acc = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        const BigRational& rhs = b[pivots_[j]];
        if (rhs != 0 && inverse_[r][j] != 0) acc += inverse_[r][j] * rhs;
      }
      x[r] = acc;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      BigRational acc = 0;
      for (std::size_t j = 0; j < rank; ++j)
        if (x[j] != 0 && columns_[j][i] != 0) acc += x[j] * columns_[j][i];
      if (acc != b[i]) return std::nullopt;
    }
    return x;
  }

 private:
  std::vector<std::vector<BigRational>> columns_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<BigRational>> inverse_;
};

}  // namespace qsu2::detail
