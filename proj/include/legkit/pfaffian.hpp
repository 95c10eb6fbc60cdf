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

#include <vector>

#include "legkit/laurent.hpp"
#include "legkit/matrix.hpp"

namespace legkit {

/// Pfaffian of an exactly skew-symmetric matrix of even size, by
/// skew-preserving elimination (congruence transforms).  Normalization:
/// Pf of blockdiag([0 1; -1 0], ...) is +1, and Pf(M)^2 = det(M).
inline Rational pfaffian(RatMatrix m) {
  if (m.rows() != m.cols()) throw SizeMismatch("pfaffian of non-square matrix");
  const Index n = m.rows();
  if (n % 2 != 0) throw OddSize();
  if (m.transpose() != -m) throw NotSkew();
  Rational pf(1);
  for (Index k = 0; k + 1 < n; k += 2) {
    Index p = -1;
    for (Index j = k + 1; j < n; ++j) {
      if (m(k, j) != 0) {
        p = j;
        break;
      }
    }
    if (p < 0) return Rational(0);  // whole row k is zero
    if (p != k + 1) {
      m.row(p).swap(m.row(k + 1));
      m.col(p).swap(m.col(k + 1));
      pf = -pf;
    }
    const Rational pivot = m(k, k + 1);
    pf *= pivot;
    const Rational inv = Rational(1) / pivot;
    for (Index j = k + 2; j < n; ++j) {
      // clear m(k, j) using row/col k+1
      if (m(k, j) != 0) {
        const Rational f = m(k, j) * inv;
        m.row(j) -= f * m.row(k + 1);
        m.col(j) -= f * m.col(k + 1);
      }
      // clear m(k+1, j) using row/col k
      if (m(k + 1, j) != 0) {
        const Rational g = -m(k + 1, j) * inv;
        m.row(j) -= g * m.row(k);
        m.col(j) -= g * m.col(k);
      }
    }
  }
  return pf;
}

/// Pfaffian of a matrix of Laurent polynomials, by the perfect-matching
/// expansion.  Intended for small sizes (<= 6) in symbolic identities.
inline LaurentPoly pfaffian_symbolic(
    const std::vector<std::vector<LaurentPoly>>& m) {
  const size_t n = m.size();
  if (n % 2 != 0) throw OddSize();
  if (n == 0) throw SizeMismatch("empty symbolic pfaffian");
  const int nvars = m[0][0].nvars();
  LaurentPoly acc(nvars);
  std::vector<int> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);

  // Recursive expansion along the first remaining index.
  struct Rec {
    const std::vector<std::vector<LaurentPoly>>& a;
    int nvars;
    LaurentPoly run(std::vector<int> rest) {
      if (rest.empty()) return LaurentPoly::constant(nvars, Rational(1));
      LaurentPoly sum(nvars);
      const int i = rest[0];
      for (size_t t = 1; t < rest.size(); ++t) {
        const int j = rest[t];
        std::vector<int> next;
        next.reserve(rest.size() - 2);
        for (size_t s = 1; s < rest.size(); ++s)
          if (s != t) next.push_back(rest[s]);
        LaurentPoly sub = run(std::move(next));
        LaurentPoly term = a[static_cast<size_t>(i)][static_cast<size_t>(j)] * sub;
        if (t % 2 == 0) term = -term;  // sign (-1)^{t+1} with t 1-based
        sum += term;
      }
      return sum;
    }
  } rec{m, nvars};
  return rec.run(idx);
}

}  // namespace legkit
