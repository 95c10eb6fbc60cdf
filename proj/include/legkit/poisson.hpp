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

#include <optional>
#include <utility>
#include <vector>

#include "legkit/laurent.hpp"
#include "legkit/symplectic.hpp"

namespace legkit {

// Polynomials on the standard symplectic Q^{2n}: variables 0..n-1 are the
// x_i, variables n..2n-1 are the y_i.  Sign convention pinned so that
// {x_i, y_i} = +1.

/// {f, g} = sum_i df/dx_i dg/dy_i - df/dy_i dg/dx_i.
inline LaurentPoly poisson_bracket(const LaurentPoly& f, const LaurentPoly& g,
                                   Index n) {
  if (f.nvars() != 2 * n || g.nvars() != 2 * n)
    throw SizeMismatch("poisson bracket variable count");
  LaurentPoly acc(static_cast<int>(2 * n));
  for (Index i = 0; i < n; ++i) {
    const int xi = static_cast<int>(i);
    const int yi = static_cast<int>(n + i);
    acc += f.derivative(xi) * g.derivative(yi);
    acc -= f.derivative(yi) * g.derivative(xi);
  }
  return acc;
}

/// Coefficient vector of a (at most) quadratic homogeneous polynomial in the
/// monomial basis z_i z_j, i <= j, ordered lexicographically.
inline RatVector quadric_coefficients(const LaurentPoly& q, Index dim) {
  const Index nmono = dim * (dim + 1) / 2;
  RatVector v = RatVector::Zero(nmono);
  auto slot = [dim](Index i, Index j) {
    // i <= j
    return i * dim - i * (i - 1) / 2 + (j - i);
  };
  for (const auto& [e, c] : q.terms()) {
    Index i = -1, j = -1;
    long total = 0;
    for (size_t k = 0; k < e.size(); ++k) {
      if (e[k] < 0) throw Unsupported("negative exponent in quadric");
      total += e[k];
      if (e[k] >= 1 && i < 0) i = static_cast<Index>(k);
      if (e[k] >= 1) j = static_cast<Index>(k);
      if (e[k] == 2) i = j = static_cast<Index>(k);
    }
    if (total != 2) throw Unsupported("non-quadratic term");
    v(slot(i, j)) = c;
  }
  return v;
}

/// Symmetric matrix M with q(v) = v^T M v, from a homogeneous quadric.
inline RatMatrix quadric_matrix(const LaurentPoly& q, Index dim) {
  RatVector coef = quadric_coefficients(q, dim);
  RatMatrix m = rat_zero(dim, dim);
  Index k = 0;
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j, ++k) {
      if (i == j) {
        m(i, i) = coef(k);
      } else {
        m(i, j) = coef(k) / Rational(2);
        m(j, i) = coef(k) / Rational(2);
      }
    }
  }
  return m;
}

/// Quadric from its symmetric matrix.
inline LaurentPoly quadric_from_matrix(const RatMatrix& m) {
  const Index dim = m.rows();
  LaurentPoly q(static_cast<int>(dim));
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j) {
      const Rational c = (i == j) ? m(i, i) : m(i, j) * Rational(2);
      if (c == 0) continue;
      LaurentPoly::Exponent e(static_cast<size_t>(dim), 0);
      e[static_cast<size_t>(i)] += 1;
      e[static_cast<size_t>(j)] += 1;
      q.add_term(e, c);
    }
  }
  return q;
}

struct PoissonClosure {
  bool closed = true;
  std::optional<std::pair<int, int>> witness;
  std::optional<LaurentPoly> witness_bracket;
};

/// For a family of homogeneous polynomials of one common degree d, decide
/// whether pairwise Poisson brackets stay in the linear span.  Brackets of
/// degree-d forms have degree 2d-2, so the question is stable only for
/// quadrics (d = 2); anything else raises Unsupported.
inline PoissonClosure is_poisson_closed_mod_span(
    const std::vector<LaurentPoly>& polys, Index n) {
  PoissonClosure out;
  if (polys.empty()) return out;
  const Index dim = 2 * n;
  long degree = -1;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.has_negative_exponent() || !p.is_homogeneous())
      throw Unsupported("inputs must be homogeneous polynomials");
    if (degree < 0) degree = p.highest_degree();
    if (p.highest_degree() != degree)
      throw Unsupported("inputs of mixed degree");
  }
  if (degree < 0) return out;
  if (degree != 2) throw Unsupported("span closure is decidable for quadrics only");

  RowSpan span(dim * (dim + 1) / 2);
  for (const auto& p : polys) span.insert(quadric_coefficients(p, dim));
  for (size_t i = 0; i < polys.size(); ++i) {
    for (size_t j = i + 1; j < polys.size(); ++j) {
      LaurentPoly br = poisson_bracket(polys[i], polys[j], n);
      if (br.is_zero()) continue;
      if (!span.contains(quadric_coefficients(br, dim))) {
        out.closed = false;
        out.witness = {static_cast<int>(i), static_cast<int>(j)};
        out.witness_bracket = std::move(br);
        return out;
      }
    }
  }
  return out;
}

}  // namespace legkit
