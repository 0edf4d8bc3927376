#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "seqwalk/scalar.hpp"

namespace seqwalk {

/// Sparse vector: entries sorted by index, zero entries never stored.
class SparseVec {
 public:
  using Entry = std::pair<int, Scalar>;

  SparseVec() = default;
  static SparseVec unit(int index, const Scalar& value) {
    SparseVec v;
    if (!value.is_zero()) v.entries_.emplace_back(index, value);
    return v;
  }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  int leading() const { return entries_.back().first; }
  const Scalar& leading_coefficient() const { return entries_.back().second; }

  Scalar get(int index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, int i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return Scalar();
  }

  /// Appends an entry; caller guarantees increasing indices.
  void push_back(int index, const Scalar& value) {
    if (!value.is_zero()) entries_.emplace_back(index, value);
  }

  /// this += c * x
  void axpy(const Scalar& c, const SparseVec& x) {
    if (c.is_zero() || x.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + x.entries_.size());
    auto a = entries_.begin();
    auto b = x.entries_.begin();
    while (a != entries_.end() || b != x.entries_.end()) {
      if (b == x.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        out.emplace_back(b->first, c * b->second);
        ++b;
      } else {
        Scalar s = a->second + c * b->second;
        if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  void scale(const Scalar& c) {
    if (c.is_zero()) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second = e.second * c;
  }

  /// Keeps only entries with index < bound.
  SparseVec truncated(int bound) const {
    SparseVec v;
    for (const auto& e : entries_)
      if (e.first < bound) v.entries_.push_back(e);
    return v;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t i = 0; i < a.entries_.size(); ++i)
      if (a.entries_[i].first != b.entries_[i].first || !(a.entries_[i].second == b.entries_[i].second))
        return false;
    return true;
  }

 private:
  std::vector<Entry> entries_;
};

/// Subspace held in fully reduced row echelon form. The pivot of a row is
/// its largest index, normalized to 1; no row has a nonzero entry at another
/// row's pivot.
class SparseSpan {
 public:
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::map<int, SparseVec>& rows() const noexcept { return rows_; }
  bool is_pivot(int index) const { return rows_.count(index) != 0; }

  SparseVec reduce(const SparseVec& v) const {
    SparseVec w = v;
    // Walk pivots from the top; subtracting a row only touches smaller indices.
    while (!w.empty()) {
      bool changed = false;
      for (auto it = w.entries().rbegin(); it != w.entries().rend(); ++it) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) continue;
        Scalar c = it->second;
        w.axpy(-c, row->second);
        changed = true;
        break;
      }
      if (!changed) break;
    }
    return w;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Adds v to the span; returns false when v was already inside.
  bool insert(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    Scalar inv = Scalar::one(r.leading_coefficient().characteristic()) / r.leading_coefficient();
    r.scale(inv);
    int pivot = r.leading();
    for (auto& [p, row] : rows_) {
      Scalar c = row.get(pivot);
      if (!c.is_zero()) row.axpy(-c, r);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

 private:
  std::map<int, SparseVec> rows_;
};

/// Echelon span that remembers how each row was built from the inserted
/// generators, so membership comes with coordinates.
class TrackedSpan {
 public:
  struct Reduction {
    SparseVec remainder;
    SparseVec combination;  // v = remainder + sum combination[i] * generator_i
  };

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t generator_count() const noexcept { return generators_; }

  Reduction reduce(const SparseVec& v) const {
    Reduction out{v, SparseVec()};
    while (!out.remainder.empty()) {
      bool changed = false;
      for (auto it = out.remainder.entries().rbegin(); it != out.remainder.entries().rend(); ++it) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) continue;
        Scalar c = it->second;
        out.remainder.axpy(-c, row->second.first);
        out.combination.axpy(c, row->second.second);
        changed = true;
        break;
      }
      if (!changed) break;
    }
    return out;
  }

  /// Inserts generator number generator_count(); returns its dependency
  /// (combination of earlier generators) when it is not independent.
  std::optional<SparseVec> insert(const SparseVec& v) {
    int id = static_cast<int>(generators_++);
    Reduction r = reduce(v);
    if (r.remainder.empty()) return r.combination;
    SparseVec combo = SparseVec::unit(id, Scalar(1));
    combo.axpy(Scalar(-1), r.combination);
    Scalar inv = Scalar::one(r.remainder.leading_coefficient().characteristic()) / r.remainder.leading_coefficient();
    r.remainder.scale(inv);
    combo.scale(inv);
    int pivot = r.remainder.leading();
    for (auto& [p, row] : rows_) {
      Scalar c = row.first.get(pivot);
      if (!c.is_zero()) {
        row.first.axpy(-c, r.remainder);
        row.second.axpy(-c, combo);
      }
    }
    rows_.emplace(pivot, std::make_pair(std::move(r.remainder), std::move(combo)));
    return std::nullopt;
  }

 private:
  std::map<int, std::pair<SparseVec, SparseVec>> rows_;
  std::size_t generators_ = 0;
};

/// Dense matrix over Scalar, row-major. Linear maps act on row vectors from
/// the right: a map V -> W is a dim V x dim W matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p = 0)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(p)) {}

  static Matrix identity(std::size_t n, std::uint32_t p = 0) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(p);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> row(std::size_t r) const {
    return {data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_)};
  }
  void append_row(const std::vector<Scalar>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Horizontal concatenation [a | b].
  static Matrix hconcat(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

namespace linalg {

/// Row echelon reduction in place; returns pivot columns in order.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Scalar inv = Scalar::one(m(r, c).characteristic()) / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

/// Basis (as rows) of the row space of m.
inline Matrix row_space(Matrix m) {
  auto piv = row_reduce(m);
  Matrix out(0, m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) out.append_row(m.row(i));
  return out;
}

/// Basis (as rows) of { x : x * m = 0 }.
inline Matrix left_kernel(const Matrix& m) {
  Matrix aug = Matrix::hconcat(m, Matrix::identity(m.rows()));
  auto piv = row_reduce(aug);
  Matrix out(0, m.rows());
  for (std::size_t i = 0; i < aug.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!aug(i, j).is_zero()) {
        zero = false;
        break;
      }
    if (!zero) continue;
    std::vector<Scalar> v;
    for (std::size_t j = 0; j < m.rows(); ++j) v.push_back(aug(i, m.cols() + j));
    out.append_row(v);
  }
  if (out.rows() == 0) out = Matrix(0, m.rows());
  return out;
}

/// Basis (as columns) of { c : m * c = 0 }.
inline Matrix right_kernel(const Matrix& m) { return left_kernel(m.transpose()).transpose(); }

/// Rows of `sub` assumed independent and spanning a subspace U; returns the
/// coordinates x with x * sub = v, or nullopt if v is not in U.
inline std::optional<std::vector<Scalar>> solve_left(const Matrix& sub, const std::vector<Scalar>& v) {
  // Solve sub^T x^T = v^T via an augmented reduction.
  Matrix aug(sub.cols(), sub.rows() + 1);
  for (std::size_t i = 0; i < sub.cols(); ++i) {
    for (std::size_t j = 0; j < sub.rows(); ++j) aug(i, j) = sub(j, i);
    aug(i, sub.rows()) = v[i];
  }
  auto piv = row_reduce(aug);
  std::vector<Scalar> x(sub.rows());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == sub.rows()) return std::nullopt;
    x[piv[i]] = aug(i, sub.rows());
  }
  return x;
}

/// Rows completing the row space of `sub` to the whole space, chosen among
/// standard unit vectors in index order.
inline Matrix complement_units(const Matrix& sub, std::size_t n, std::uint32_t p = 0) {
  Matrix acc = row_space(sub);
  Matrix out(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Scalar> e(n, Scalar::zero(p));
    e[i] = Scalar::one(p);
    Matrix trial = acc;
    trial.append_row(e);
    if (rank(trial) > acc.rows()) {
      acc = row_space(trial);
      out.append_row(e);
    }
  }
  if (out.rows() == 0) out = Matrix(0, n);
  return out;
}

/// Stacks rows of a and b.
inline Matrix vconcat(const Matrix& a, const Matrix& b) {
  Matrix m(0, a.cols() ? a.cols() : b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) m.append_row(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) m.append_row(b.row(i));
  return m;
}

}  // namespace linalg
}  // namespace seqwalk
