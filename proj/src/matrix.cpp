#include "submod/matrix.hpp"

#include <algorithm>
#include <utility>

namespace submod {

Matrix::Matrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), cols_(cols), rows_(rows, Row(cols, Elem{0})) {
  if (!ring_) throw DomainError("matrix requires a ring");
}

Matrix::Matrix(RingPtr ring, std::size_t cols, std::vector<Row> rows)
    : ring_(std::move(ring)), cols_(cols), rows_(std::move(rows)) {
  if (!ring_) throw DomainError("matrix requires a ring");
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw DomainError("matrix row has wrong width");
    for (Elem e : r)
      if (e.code >= ring_->size()) throw DomainError("matrix entry outside " + ring_->name());
  }
}

Matrix Matrix::from_ints(RingPtr ring, std::size_t cols,
                         std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<Row> data;
  for (const auto& r : rows) {
    Row row;
    for (long long v : r) row.push_back(ring->from_integer(v));
    data.push_back(std::move(row));
  }
  return Matrix(std::move(ring), cols, std::move(data));
}

Matrix Matrix::identity(RingPtr ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, ring->one());
  return m;
}

void Matrix::append_row(Row r) {
  if (r.size() != cols_) throw DomainError("appended row has wrong width");
  rows_.push_back(std::move(r));
}

void Matrix::erase_row(std::size_t i) { rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i)); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_->same_as(*b.ring_) && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::size_t leading_position(std::span<const Elem> v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j].code != 0) return j;
  return kNoLead;
}

bool is_zero_row(std::span<const Elem> v) { return leading_position(v) == kNoLead; }

Row scale_row(const Ring& r, Elem c, std::span<const Elem> v) {
  Row out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = r.mul(c, v[j]);
  return out;
}

Row axpy(const Ring& r, std::span<const Elem> v, Elem c, std::span<const Elem> w) {
  Row out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = r.add(v[j], r.mul(c, w[j]));
  return out;
}

EchelonMatrix row_echelon(const Matrix& a) {
  const Ring& r = a.ring();
  std::vector<Row> pending;
  for (const auto& row : a.row_list())
    if (!is_zero_row(row)) pending.push_back(row);

  EchelonMatrix out{Matrix(a.ring_ptr(), 0, a.cols()), {}, false};
  while (!pending.empty()) {
    std::size_t j = kNoLead;
    for (const auto& row : pending) j = std::min(j, leading_position(row));

    std::vector<Row> rest;
    Row pivot;
    bool have_pivot = false;
    for (auto& row : pending) {
      if (leading_position(row) != j) {
        rest.push_back(std::move(row));
        continue;
      }
      if (!have_pivot) {
        pivot = std::move(row);
        have_pivot = true;
        continue;
      }
      Transform2 t = r.stab2(pivot[j], row[j]);
      Row top(a.cols()), bottom(a.cols());
      for (std::size_t c = 0; c < a.cols(); ++c) {
        top[c] = r.add(r.mul(t.x, pivot[c]), r.mul(t.y, row[c]));
        bottom[c] = r.add(r.mul(t.z, pivot[c]), r.mul(t.t, row[c]));
      }
      pivot = std::move(top);
      if (!is_zero_row(bottom)) rest.push_back(std::move(bottom));
    }

    Row extra = scale_row(r, r.annihilator(pivot[j]).generator, pivot);
    if (!is_zero_row(extra)) rest.push_back(std::move(extra));
    out.base.append_row(std::move(pivot));
    out.pivot_cols.push_back(j);
    pending = std::move(rest);
  }
  return out;
}

EchelonMatrix rref(const Matrix& a) {
  EchelonMatrix e = row_echelon(a);
  const Ring& r = a.ring();
  for (std::size_t i = 0; i < e.base.rows(); ++i) {
    Normalization n = r.normalize(e.pivot(i));
    e.base.row(i) = scale_row(r, n.unit, e.base.row(i));
  }
  for (std::size_t i = 1; i < e.base.rows(); ++i) {
    const std::size_t p = e.pivot_cols[i];
    const Elem g = e.pivot(i);
    for (std::size_t above = 0; above < i; ++above) {
      Reduction red = r.reduce(e.base.at(above, p), g);
      if (red.quotient.code != 0)
        e.base.row(above) = axpy(r, e.base.row(above), r.neg(red.quotient), e.base.row(i));
    }
  }
  e.reduced = true;
  return e;
}

Membership member(std::span<const Elem> v, const Matrix& e) {
  const Ring& r = e.ring();
  if (v.size() != e.cols()) throw DomainError("member: vector width does not match matrix");
  Membership out{false, Row(e.rows(), Elem{0})};
  std::vector<std::size_t> leads(e.rows());
  for (std::size_t i = 0; i < e.rows(); ++i) leads[i] = leading_position(e.row(i));

  Row w(v.begin(), v.end());
  for (std::size_t lead = leading_position(w); lead != kNoLead; lead = leading_position(w)) {
    auto it = std::find(leads.begin(), leads.end(), lead);
    if (it == leads.end()) return out;
    const std::size_t i = static_cast<std::size_t>(it - leads.begin());
    const Elem p = e.at(i, lead);
    if (!r.divides(p, w[lead])) return out;
    const Elem c = r.divide(w[lead], p);
    out.coefficients[i] = r.add(out.coefficients[i], c);
    w = axpy(r, w, r.neg(c), e.row(i));
  }
  out.member = true;
  return out;
}

EchelonVerdict is_row_echelon(const Matrix& a) {
  const Ring& r = a.ring();
  const std::size_t t = a.rows();
  if (t == 0) return {true, ""};
  for (std::size_t i = 0; i < t; ++i)
    if (is_zero_row(a.row(i))) return {false, "row " + std::to_string(i + 1) + " is zero"};
  for (std::size_t i = 0; i + 1 < t; ++i)
    if (leading_position(a.row(i + 1)) <= leading_position(a.row(i)))
      return {false, "leading positions of rows " + std::to_string(i + 1) + " and " + std::to_string(i + 2) +
                         " are not strictly increasing"};

  const std::size_t last_lead = leading_position(a.row(t - 1));
  const Elem last_pivot = a.at(t - 1, last_lead);
  for (std::size_t j = last_lead; j < a.cols(); ++j)
    if (!r.divides(last_pivot, a.at(t - 1, j)))
      return {false, "pivot " + r.format(last_pivot) + " of the last row does not divide entry " +
                         r.format(a.at(t - 1, j)) + " in column " + std::to_string(j + 1)};

  for (std::size_t i = t - 1; i-- > 0;) {
    const Row& row = a.row(i);
    const Elem ann = r.annihilator(row[leading_position(row)]).generator;
    Row probe = scale_row(r, ann, row);
    Matrix tail = sub_matrix(a, i + 1, 0, t - i - 1, a.cols());
    if (!member(probe, tail).member)
      return {false, "ann(pivot)·row " + std::to_string(i + 1) + " is not in the span of the rows below"};
  }
  return {true, ""};
}

Matrix stack(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "stack");
  if (a.cols() != b.cols()) throw DomainError("stack: column counts differ");
  std::vector<Row> rows = a.row_list();
  rows.insert(rows.end(), b.row_list().begin(), b.row_list().end());
  return Matrix(a.ring_ptr(), a.cols(), std::move(rows));
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "multiply");
  if (a.cols() != b.rows()) throw DomainError("multiply: inner dimensions differ");
  const Ring& r = a.ring();
  Matrix out(a.ring_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem c = a.at(i, k);
      if (c.code == 0) continue;
      out.row(i) = axpy(r, out.row(i), c, b.row(k));
    }
  return out;
}

Matrix sub_matrix(const Matrix& a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
  if (row0 + rows > a.rows() || col0 + cols > a.cols()) throw DomainError("sub_matrix out of range");
  Matrix out(a.ring_ptr(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.set(i, j, a.at(row0 + i, col0 + j));
  return out;
}

}  // namespace submod
