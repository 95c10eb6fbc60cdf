/*
 * Copyright 2026 The legkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "legkit/rational.hpp"

namespace legkit {

using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RatRowVector = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;
using Index = Eigen::Index;

inline RatMatrix rat_identity(Index n) {
  return RatMatrix::Identity(n, n);
}

inline RatMatrix rat_zero(Index r, Index c) { return RatMatrix::Zero(r, c); }

/// Row echelon data of a matrix: the reduced form plus its pivot columns.
struct Echelon {
  RatMatrix reduced;
  std::vector<Index> pivots;
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
/// Pivot choice is the first nonzero entry in scan order, so the result is
/// deterministic (and unique anyway, being the RREF).
inline Echelon rref(RatMatrix a) {
  const Index rows = a.rows(), cols = a.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Rational inv = Rational(1) / a(r, c);
    for (Index j = c; j < cols; ++j) a(r, j) *= inv;
    a(r, c) = 1;  // kill rounding of the pivot's own gcd work
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      a(i, c) = 0;
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(a), std::move(pivots)};
}

inline Index rank(const RatMatrix& a) {
  return static_cast<Index>(rref(a).pivots.size());
}

/// Canonical basis of a column span: reduced column echelon form with
/// leading entry 1 (the RREF of the transpose, transposed back).  Two
/// matrices have the same column span iff this form coincides.
inline RatMatrix column_space_basis(const RatMatrix& a) {
  Echelon e = rref(a.transpose());
  const Index r = static_cast<Index>(e.pivots.size());
  RatMatrix basis = e.reduced.topRows(r).transpose();
  return basis;
}

/// Basis of { v : a v = 0 } as the columns of the returned matrix,
/// normalized to reduced column echelon form so output is deterministic.
inline RatMatrix mat_kernel(const RatMatrix& a) {
  const Index cols = a.cols();
  Echelon e = rref(a);
  const Index r = static_cast<Index>(e.pivots.size());
  std::vector<bool> is_pivot(cols, false);
  for (Index p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
  RatMatrix k(cols, cols - r);
  k.setZero();
  Index out = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    k(f, out) = 1;
    for (Index i = 0; i < r; ++i) k(e.pivots[static_cast<size_t>(i)], out) = -e.reduced(i, f);
    ++out;
  }
  if (k.cols() == 0) return k;
  return column_space_basis(k);
}

/// Determinant by fraction-preserving elimination with row swaps.
inline Rational det(RatMatrix a) {
  if (a.rows() != a.cols()) throw SizeMismatch("det of non-square matrix");
  const Index n = a.rows();
  Rational d(1);
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index i = c; i < n; ++i) {
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) return Rational(0);
    if (p != c) {
      a.row(p).swap(a.row(c));
      d = -d;
    }
    d *= a(c, c);
    const Rational inv = Rational(1) / a(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) * inv;
      for (Index j = c + 1; j < n; ++j) a(i, j) -= f * a(c, j);
      a(i, c) = 0;
    }
  }
  return d;
}

inline std::optional<RatMatrix> try_inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw SizeMismatch("inverse of non-square matrix");
  const Index n = a.rows();
  RatMatrix aug(n, 2 * n);
  aug << a, rat_identity(n);
  Echelon e = rref(std::move(aug));
  if (static_cast<Index>(e.pivots.size()) < n || e.pivots.back() >= n)
    return std::nullopt;
  return RatMatrix(e.reduced.rightCols(n));
}

inline RatMatrix inverse(const RatMatrix& a) {
  auto inv = try_inverse(a);
  if (!inv) throw SingularInput("matrix is singular");
  return *inv;
}

/// One solution of a x = b, if the system is consistent.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  RatMatrix aug(a.rows(), a.cols() + 1);
  aug << a, b;
  Echelon e = rref(std::move(aug));
  for (Index p : e.pivots)
    if (p == a.cols()) return std::nullopt;
  RatVector x = RatVector::Zero(a.cols());
  for (Index i = 0; i < static_cast<Index>(e.pivots.size()); ++i)
    x(e.pivots[static_cast<size_t>(i)]) = e.reduced(i, a.cols());
  return x;
}

/// Incremental row-space tracker.  Inserting rows keeps a growing RREF;
/// used to answer many span-membership queries against one subspace.
class RowSpan {
 public:
  explicit RowSpan(Index width) : width_(width), mat_(0, width) {}

  Index rank() const { return mat_.rows(); }
  Index width() const { return width_; }
  const RatMatrix& rows() const { return mat_; }

  /// Reduce v against the current rows; returns the residue.
  RatVector residue(const RatVector& v) const {
    RatVector w = v;
    for (Index i = 0; i < mat_.rows(); ++i) {
      const Index p = pivots_[static_cast<size_t>(i)];
      if (w(p) == 0) continue;
      const Rational f = w(p);
      for (Index j = 0; j < width_; ++j) w(j) -= f * mat_(i, j);
      w(p) = 0;
    }
    return w;
  }

  bool contains(const RatVector& v) const {
    RatVector w = residue(v);
    for (Index j = 0; j < width_; ++j)
      if (w(j) != 0) return false;
    return true;
  }

  /// Insert a row; returns true when the rank grew.
  bool insert(const RatVector& v) {
    RatVector w = residue(v);
    Index p = -1;
    for (Index j = 0; j < width_; ++j) {
      if (w(j) != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) return false;
    const Rational inv = Rational(1) / w(p);
    for (Index j = 0; j < width_; ++j) w(j) *= inv;
    w(p) = 1;
    // keep reduced: eliminate column p from existing rows
    for (Index i = 0; i < mat_.rows(); ++i) {
      if (mat_(i, p) == 0) continue;
      const Rational f = mat_(i, p);
      for (Index j = 0; j < width_; ++j) mat_(i, j) -= f * w(j);
      mat_(i, p) = 0;
    }
    // insert keeping pivot order
    size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    RatMatrix next(mat_.rows() + 1, width_);
    next.topRows(static_cast<Index>(at)) = mat_.topRows(static_cast<Index>(at));
    next.row(static_cast<Index>(at)) = w.transpose();
    next.bottomRows(mat_.rows() - static_cast<Index>(at)) =
        mat_.bottomRows(mat_.rows() - static_cast<Index>(at));
    mat_ = std::move(next);
    pivots_.insert(pivots_.begin() + static_cast<long>(at), p);
    return true;
  }

 private:
  Index width_;
  RatMatrix mat_;
  std::vector<Index> pivots_;
};

/// Column span equality as subspaces.
inline bool same_span(const RatMatrix& a, const RatMatrix& b) {
  return column_space_basis(a) == column_space_basis(b);
}

/// Is every column of b inside the column span of a?
inline bool span_contains(const RatMatrix& a, const RatMatrix& b) {
  RowSpan s(a.rows());
  for (Index c = 0; c < a.cols(); ++c) s.insert(a.col(c));
  for (Index c = 0; c < b.cols(); ++c)
    if (!s.contains(b.col(c))) return false;
  return true;
}

inline RatMatrix to_rational(const Eigen::MatrixXd&) = delete;

inline Eigen::MatrixXd to_double(const RatMatrix& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) m(i, j) = to_double(a(i, j));
  return m;
}

inline Eigen::VectorXd to_double(const RatVector& a) {
  Eigen::VectorXd v(a.size());
  for (Index i = 0; i < a.size(); ++i) v(i) = to_double(a(i));
  return v;
}

inline RatVector flatten_row_major(const RatMatrix& a) {
  RatVector v(a.rows() * a.cols());
  Index k = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) v(k++) = a(i, j);
  return v;
}

inline RatMatrix unflatten_row_major(const RatVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw SizeMismatch("unflatten size mismatch");
  RatMatrix a(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) a(i, j) = v(k++);
  return a;
}

}  // namespace legkit
