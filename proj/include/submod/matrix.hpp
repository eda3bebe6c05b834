#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "submod/ring.hpp"

namespace submod {

using Row = std::vector<Elem>;

/// Leading position of the zero vector. Sorts after every real column.
inline constexpr std::size_t kNoLead = std::numeric_limits<std::size_t>::max();

/// Dense row-major matrix over a single ring. Zero rows and zero columns are
/// both allowed.
class Matrix {
 public:
  Matrix(RingPtr ring, std::size_t rows, std::size_t cols);
  Matrix(RingPtr ring, std::size_t cols, std::vector<Row> rows);
  static Matrix from_ints(RingPtr ring, std::size_t cols,
                          std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix identity(RingPtr ring, std::size_t n);

  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const Ring& ring() const noexcept { return *ring_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty(); }

  Elem at(std::size_t i, std::size_t j) const { return rows_.at(i).at(j); }
  void set(std::size_t i, std::size_t j, Elem v) { rows_.at(i).at(j) = v; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  Row& row(std::size_t i) { return rows_.at(i); }
  const std::vector<Row>& row_list() const noexcept { return rows_; }

  void append_row(Row r);
  void erase_row(std::size_t i);

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  RingPtr ring_;
  std::size_t cols_;
  std::vector<Row> rows_;
};

/// Echelon output: base has no zero rows and strictly increasing pivots.
struct EchelonMatrix {
  Matrix base;
  std::vector<std::size_t> pivot_cols;
  bool reduced = false;

  Elem pivot(std::size_t i) const { return base.at(i, pivot_cols.at(i)); }
};

struct EchelonVerdict {
  bool yes = false;
  std::string reason;
};

struct Membership {
  bool member = false;
  Row coefficients;
};

std::size_t leading_position(std::span<const Elem> v);
bool is_zero_row(std::span<const Elem> v);

// Row arithmetic.
Row scale_row(const Ring& r, Elem c, std::span<const Elem> v);
/// v + c·w
Row axpy(const Ring& r, std::span<const Elem> v, Elem c, std::span<const Elem> w);

EchelonMatrix row_echelon(const Matrix& a);
EchelonMatrix rref(const Matrix& a);
EchelonVerdict is_row_echelon(const Matrix& a);
/// Greedy pivot division. `e` must be in row-echelon form.
Membership member(std::span<const Elem> v, const Matrix& e);

Matrix stack(const Matrix& a, const Matrix& b);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix sub_matrix(const Matrix& a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols);

}  // namespace submod
