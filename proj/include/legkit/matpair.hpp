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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legkit/pfaffian.hpp"
#include "legkit/variety.hpp"

namespace legkit {

enum class PairFlavor { Full, Symmetric, Skew };

inline const char* to_string(PairFlavor f) {
  switch (f) {
    case PairFlavor::Full: return "full";
    case PairFlavor::Symmetric: return "symmetric";
    case PairFlavor::Skew: return "skew";
  }
  return "?";
}

/// A pair of m x m matrices, the points of the matrix-pair space.
struct PairPoint {
  RatMatrix A;
  RatMatrix B;
};

/// The space of matrix pairs (A, B) with the trace form
/// omega((A,B),(A',B')) = tr(A B'^T - A' B^T), restricted to the flavor
/// subspace (full pairs, symmetric pairs, or skew pairs).
class MatrixPairSpec {
 public:
  MatrixPairSpec(int m, PairFlavor flavor)
      : m_(m), flavor_(flavor), ambient_(make_space(m, flavor)) {
    if (m < 2) throw InvalidFlavor("matrix size must be at least 2");
  }

  int m() const { return m_; }
  PairFlavor flavor() const { return flavor_; }
  const SymplecticSpace& ambient() const { return ambient_; }
  Index half_coords() const { return ambient_.half_dim(); }

  /// Flatten a pair to ambient coordinates (A-block then B-block).
  RatVector flatten(const PairPoint& p) const {
    check_flavor(p);
    RatVector v(ambient_.dim());
    Index k = 0;
    for (const RatMatrix* mat : {&p.A, &p.B})
      for (auto [i, j] : coord_slots())
        v(k++) = (*mat)(i, j);
    return v;
  }

  PairPoint unflatten(const RatVector& v) const {
    if (v.size() != ambient_.dim()) throw SizeMismatch("pair point size");
    PairPoint p{rat_zero(m_, m_), rat_zero(m_, m_)};
    Index k = 0;
    for (RatMatrix* mat : {&p.A, &p.B}) {
      for (auto [i, j] : coord_slots()) {
        (*mat)(i, j) = v(k);
        if (flavor_ == PairFlavor::Symmetric && i != j) (*mat)(j, i) = v(k);
        if (flavor_ == PairFlavor::Skew) (*mat)(j, i) = -v(k);
        ++k;
      }
    }
    return p;
  }

  Rational omega(const PairPoint& p, const PairPoint& q) const {
    return ambient_.omega(flatten(p), flatten(q));
  }

  /// Coordinate slots of one matrix block, in lexicographic order.
  std::vector<std::pair<Index, Index>> coord_slots() const {
    std::vector<std::pair<Index, Index>> slots;
    for (Index i = 0; i < m_; ++i) {
      for (Index j = 0; j < m_; ++j) {
        if (flavor_ == PairFlavor::Symmetric && j < i) continue;
        if (flavor_ == PairFlavor::Skew && j <= i) continue;
        slots.emplace_back(i, j);
      }
    }
    return slots;
  }

 private:
  static SymplecticSpace make_space(int m, PairFlavor flavor) {
    Index half = 0;
    std::vector<Rational> d;
    switch (flavor) {
      case PairFlavor::Full:
        half = static_cast<Index>(m) * m;
        d.assign(static_cast<size_t>(half), Rational(1));
        break;
      case PairFlavor::Symmetric:
        half = static_cast<Index>(m) * (m + 1) / 2;
        for (Index i = 0; i < m; ++i)
          for (Index j = i; j < m; ++j) d.push_back(Rational(i == j ? 1 : 2));
        break;
      case PairFlavor::Skew:
        half = static_cast<Index>(m) * (m - 1) / 2;
        d.assign(static_cast<size_t>(half), Rational(2));
        break;
    }
    RatMatrix j = rat_zero(2 * half, 2 * half);
    for (Index i = 0; i < half; ++i) {
      j(i, half + i) = d[static_cast<size_t>(i)];
      j(half + i, i) = -d[static_cast<size_t>(i)];
    }
    return SymplecticSpace(2 * half, std::move(j));
  }

  void check_flavor(const PairPoint& p) const {
    if (p.A.rows() != m_ || p.A.cols() != m_ || p.B.rows() != m_ || p.B.cols() != m_)
      throw SizeMismatch("pair matrices must be m x m");
    if (flavor_ == PairFlavor::Symmetric &&
        (p.A.transpose() != p.A || p.B.transpose() != p.B))
      throw FlavorViolation("pair is not symmetric");
    if (flavor_ == PairFlavor::Skew &&
        (p.A.transpose() != -p.A || p.B.transpose() != -p.B))
      throw FlavorViolation("pair is not skew");
  }

  int m_;
  PairFlavor flavor_;
  SymplecticSpace ambient_;
};

inline MatrixPairSpec build_matpair_space(int m, PairFlavor flavor) {
  return MatrixPairSpec(m, flavor);
}

// --- symbolic coordinates on the full pair space ------------------------

/// Variable index of a_{ij} (0-based) among the 2m^2 coordinates.
inline int avar(int m, int i, int j) { return i * m + j; }
/// Variable index of b_{ij}.
inline int bvar(int m, int i, int j) { return m * m + i * m + j; }

inline LaurentPoly pair_var(int m, int idx) {
  return LaurentPoly::variable(2 * m * m, idx);
}

/// The quadric families cutting out Y: row products A B^T (scalar, equal
/// diagonal) and column products B^T A, with the common scalar eliminated.
inline std::vector<LaurentPoly> y_quadrics(int m) {
  const int nv = 2 * m * m;
  std::vector<LaurentPoly> out;
  auto row_prod = [&](int i, int j) {
    LaurentPoly q(nv);
    for (int k = 0; k < m; ++k)
      q += pair_var(m, avar(m, i, k)) * pair_var(m, bvar(m, j, k));
    return q;
  };
  auto col_prod = [&](int i, int j) {
    LaurentPoly q(nv);
    for (int k = 0; k < m; ++k)
      q += pair_var(m, avar(m, k, i)) * pair_var(m, bvar(m, k, j));
    return q;
  };
  for (int i = 1; i < m; ++i) out.push_back(row_prod(i, i) - row_prod(0, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) out.push_back(row_prod(i, j));
  for (int i = 1; i < m; ++i) out.push_back(col_prod(i, i) - col_prod(0, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) out.push_back(col_prod(i, j));
  return out;
}

struct YMembership {
  bool member = false;
  std::optional<Rational> lambda_sq;
  Index violated_quadrics = 0;  // count of Y equations not vanishing
};

/// A B^T = B^T A = lambda^2 Id test, with the per-quadric violation count.
inline YMembership y_membership(const PairPoint& p) {
  YMembership out;
  const Index m = p.A.rows();
  const RatMatrix ab = p.A * p.B.transpose();
  const RatMatrix ba = p.B.transpose() * p.A;
  for (Index i = 0; i < m; ++i) {
    if (i > 0 && ab(i, i) != ab(0, 0)) out.violated_quadrics++;
    if (i > 0 && ba(i, i) != ba(0, 0)) out.violated_quadrics++;
    for (Index j = 0; j < m; ++j) {
      if (i == j) continue;
      if (ab(i, j) != 0) out.violated_quadrics++;
      if (ba(i, j) != 0) out.violated_quadrics++;
    }
  }
  out.member = out.violated_quadrics == 0 && ab(0, 0) == ba(0, 0);
  if (out.member) out.lambda_sq = ab(0, 0);
  return out;
}

// --- submatrix helpers ----------------------------------------------------

/// Submatrix obtained by REMOVING the rows in I and the columns in J
/// (0-based, strictly increasing).
inline RatMatrix remove_rows_cols(const RatMatrix& a, const std::vector<int>& I,
                                  const std::vector<int>& J) {
  std::vector<Index> rows, cols;
  for (Index i = 0; i < a.rows(); ++i)
    if (std::find(I.begin(), I.end(), static_cast<int>(i)) == I.end()) rows.push_back(i);
  for (Index j = 0; j < a.cols(); ++j)
    if (std::find(J.begin(), J.end(), static_cast<int>(j)) == J.end()) cols.push_back(j);
  RatMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(static_cast<Index>(r), static_cast<Index>(c)) = a(rows[r], cols[c]);
  return out;
}

/// det A_{I,J} = (-1)^{sum I + sum J} det B_{I',J'} for A of determinant 1
/// and B = (A^{-1})^T; index sets 0-based of equal size.
inline bool minor_identity_check(const RatMatrix& g, const std::vector<int>& I,
                                 const std::vector<int>& J) {
  if (I.size() != J.size()) throw SizeMismatch("index sets must have equal size");
  if (det(g) != 1) throw SingularInput("matrix determinant is not 1");
  const RatMatrix b = inverse(g).transpose();
  std::vector<int> Ic, Jc;
  for (int i = 0; i < g.rows(); ++i) {
    if (std::find(I.begin(), I.end(), i) == I.end()) Ic.push_back(i);
    if (std::find(J.begin(), J.end(), i) == J.end()) Jc.push_back(i);
  }
  long sign_exp = 0;
  for (int i : I) sign_exp += i;
  for (int j : J) sign_exp += j;
  const Rational lhs = det(remove_rows_cols(g, I, J));
  Rational rhs = det(remove_rows_cols(b, Ic, Jc));
  if (sign_exp % 2 != 0) rhs = -rhs;
  return lhs == rhs;
}

// --- X_inv and X_deg ------------------------------------------------------

struct EquationBattery {
  bool y_ok = true;            // the Y quadrics
  bool cubics_ok = true;       // det(A_ij) a_kl = +- b_ij det(B_kl)
  bool half_minors_ok = true;  // equal complementary half minors (even m)
  bool power_ok = true;        // squared-minor times trace-power identities
  bool all() const { return y_ok && cubics_ok && half_minors_ok && power_ok; }
};

namespace detail {
inline void subsets_of_size(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(idx.size()) == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= m - (k - static_cast<int>(idx.size())); ++i) {
      idx.push_back(i);
      rec(i + 1);
      idx.pop_back();
    }
  };
  rec(0);
}
}  // namespace detail

/// Exact check of every equation family satisfied by points of X_inv(m).
inline EquationBattery equation_battery(const PairPoint& p) {
  EquationBattery out;
  const int m = static_cast<int>(p.A.rows());
  out.y_ok = y_membership(p).member;

  // cubic identities det(A_ij) a_kl = (-1)^{i+j+k+l} b_ij det(B_kl)
  for (int i = 0; i < m && out.cubics_ok; ++i)
    for (int j = 0; j < m && out.cubics_ok; ++j)
      for (int k = 0; k < m && out.cubics_ok; ++k)
        for (int l = 0; l < m && out.cubics_ok; ++l) {
          const Rational lhs = det(remove_rows_cols(p.A, {i}, {j})) * p.A(k, l);
          Rational rhs = p.B(i, j) * det(remove_rows_cols(p.B, {k}, {l}));
          if ((i + j + k + l) % 2 != 0) rhs = -rhs;
          if (lhs != rhs) out.cubics_ok = false;
        }

  // half-size complementary minors (m even)
  if (m % 2 == 0) {
    const int k = m / 2;
    detail::subsets_of_size(m, k, [&](const std::vector<int>& I) {
      detail::subsets_of_size(m, k, [&](const std::vector<int>& J) {
        if (!out.half_minors_ok) return;
        std::vector<int> Ic, Jc;
        for (int i = 0; i < m; ++i) {
          if (std::find(I.begin(), I.end(), i) == I.end()) Ic.push_back(i);
          if (std::find(J.begin(), J.end(), i) == J.end()) Jc.push_back(i);
        }
        long se = 0;
        for (int i : I) se += i;
        for (int j : J) se += j;
        const Rational lhs = det(remove_rows_cols(p.A, I, J));
        Rational rhs = det(remove_rows_cols(p.B, Ic, Jc));
        if (se % 2 != 0) rhs = -rhs;
        if (lhs != rhs) out.half_minors_ok = false;
      });
    });
  }

  // (det A_{I,J})^2 = (det B_{I',J'})^2 (sum_k a_{1k} b_{1k})^l, l = m - 2k
  Rational trace_row(0);
  for (int k = 0; k < m; ++k) trace_row += p.A(0, k) * p.B(0, k);
  for (int k = 0; 2 * k < m && out.power_ok; ++k) {
    const long l = m - 2 * k;
    detail::subsets_of_size(m, k, [&](const std::vector<int>& I) {
      detail::subsets_of_size(m, k, [&](const std::vector<int>& J) {
        if (!out.power_ok) return;
        std::vector<int> Ic, Jc;
        for (int i = 0; i < m; ++i) {
          if (std::find(I.begin(), I.end(), i) == I.end()) Ic.push_back(i);
          if (std::find(J.begin(), J.end(), i) == J.end()) Jc.push_back(i);
        }
        const Rational lhs = det(remove_rows_cols(p.A, I, J));
        const Rational rhs = det(remove_rows_cols(p.B, Ic, Jc));
        if (lhs * lhs != rhs * rhs * pow_int(trace_row, l)) out.power_ok = false;
      });
    });
  }
  return out;
}

/// The X_inv point over an invertible matrix: (g, (g^{-1})^T) for the full
/// flavor, (A, A^{-1}) symmetric, (A, -A^{-1}) skew with Pfaffian 1.
inline PairPoint xinv_point(const RatMatrix& g, PairFlavor flavor = PairFlavor::Full) {
  switch (flavor) {
    case PairFlavor::Full: {
      if (det(g) != 1) throw NotUnimodular();
      return {g, inverse(g).transpose()};
    }
    case PairFlavor::Symmetric: {
      if (g.transpose() != g) throw FlavorViolation("matrix is not symmetric");
      if (det(g) != 1) throw NotUnimodular();
      return {g, inverse(g)};
    }
    case PairFlavor::Skew: {
      if (g.transpose() != -g) throw FlavorViolation("matrix is not skew");
      if (pfaffian(g) != 1) throw NotUnimodular("Pfaffian is not 1");
      return {g, -inverse(g)};
    }
  }
  throw InvalidFlavor();
}

/// Membership in X_deg(m,k): A B^T = B^T A = 0 with rank A <= k and
/// rank B <= m-k.
inline bool xdeg_membership(const PairPoint& p, int k) {
  const int m = static_cast<int>(p.A.rows());
  if (k < 0 || k > m) throw InvalidRange("rank bound out of range");
  if (!RatMatrix(p.A * p.B.transpose()).isZero(0)) return false;
  if (!RatMatrix(p.B.transpose() * p.A).isZero(0)) return false;
  return rank(p.A) <= k && rank(p.B) <= m - k;
}

// --- group action ---------------------------------------------------------

/// An element (g, h) of SL_m x SL_m acting by (A, B) -> (g^T A h, g^{-1} B (h^{-1})^T).
struct UnimodularPair {
  RatMatrix g, h, g_inv, h_inv;
};

inline PairPoint apply_pair_action(const UnimodularPair& u, const PairPoint& p) {
  return {u.g.transpose() * p.A * u.h,
          u.g_inv * p.B * u.h_inv.transpose()};
}

inline PairPoint apply_psi(const Rational& mu, const PairPoint& p) {
  if (mu == 0) throw InvalidRange("psi requires nonzero scale");
  return {mu * p.A, (Rational(1) / mu) * p.B};
}

/// Random product of elementary transvections; determinant exactly 1.
inline RatMatrix random_unimodular(int m, std::uint64_t seed, std::uint64_t index) {
  RatMatrix g = rat_identity(m);
  const int steps = 3 * m;
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(small_int(seed, index, 2 * static_cast<std::uint64_t>(s), 0, m - 1));
    int j = static_cast<int>(small_int(seed, index, 2 * static_cast<std::uint64_t>(s) + 1, 0, m - 2));
    if (j >= i) ++j;
    const Rational lambda = small_rational(seed, index, 1000 + static_cast<std::uint64_t>(s));
    g.row(i) += lambda * g.row(j);  // E_{ij}(lambda) * g
  }
  return g;
}

inline UnimodularPair random_unimodular_pair(int m, std::uint64_t seed,
                                             std::uint64_t index) {
  RatMatrix g = random_unimodular(m, seed, 2 * index);
  RatMatrix h = random_unimodular(m, seed, 2 * index + 1);
  return {g, h, inverse(g), inverse(h)};
}

// --- parametrizations -----------------------------------------------------

namespace detail {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

inline PolyMatrix poly_zero(int rows, int cols, int nvars) {
  return PolyMatrix(static_cast<size_t>(rows),
                    std::vector<LaurentPoly>(static_cast<size_t>(cols), LaurentPoly(nvars)));
}

inline PolyMatrix poly_identity(int n, int nvars) {
  PolyMatrix m = poly_zero(n, n, nvars);
  for (int i = 0; i < n; ++i)
    m[static_cast<size_t>(i)][static_cast<size_t>(i)] = LaurentPoly::constant(nvars, Rational(1));
  return m;
}

inline PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  const size_t rows = a.size(), inner = b.size(), cols = b[0].size();
  const int nvars = a[0][0].nvars();
  PolyMatrix out = poly_zero(static_cast<int>(rows), static_cast<int>(cols), nvars);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] += a[i][k] * b[k][j];
      }
    }
  return out;
}

inline PolyMatrix poly_transpose(const PolyMatrix& a) {
  const size_t rows = a.size(), cols = a[0].size();
  PolyMatrix out = poly_zero(static_cast<int>(cols), static_cast<int>(rows), a[0][0].nvars());
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
  return out;
}

inline PolyMatrix poly_neg(PolyMatrix a) {
  for (auto& row : a)
    for (auto& e : row) e = -e;
  return a;
}

/// Inverse of an upper-triangular matrix whose diagonal entries are
/// monomials (exactly invertible in the Laurent ring).
inline PolyMatrix upper_triangular_inverse(const PolyMatrix& u) {
  const int n = static_cast<int>(u.size());
  const int nvars = u[0][0].nvars();
  PolyMatrix x = poly_zero(n, n, nvars);
  for (int i = n - 1; i >= 0; --i) {
    x[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        LaurentPoly::constant(nvars, Rational(1)).divide_by_monomial(u[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      LaurentPoly acc(nvars);
      for (int k = i; k < j; ++k)
        acc += x[static_cast<size_t>(i)][static_cast<size_t>(k)] * u[static_cast<size_t>(k)][static_cast<size_t>(j)];
      x[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (-acc).divide_by_monomial(u[static_cast<size_t>(j)][static_cast<size_t>(j)]);
    }
  }
  return x;
}

inline PolyMatrix lower_triangular_unit_inverse(const PolyMatrix& l) {
  // transpose, invert, transpose back; diagonal is all ones
  return poly_transpose(upper_triangular_inverse(poly_transpose(l)));
}

}  // namespace detail

/// Laurent parametrization of the cone over X_inv(m) (and its symmetric /
/// skew variants) through a triangular factorization chart of the
/// determinant-one (Pfaffian-one) matrices.
inline ParamVariety build_xinv_variety(int m, PairFlavor flavor = PairFlavor::Full) {
  using detail::PolyMatrix;
  MatrixPairSpec spec(m, flavor);
  int nvars = 0;
  PolyMatrix a, b;

  if (flavor == PairFlavor::Full) {
    nvars = m * m - 1;
    // variables: strict lower of L, then u_1..u_{m-1}, then strict upper of U
    int next = 0;
    PolyMatrix L = detail::poly_identity(m, nvars);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        L[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
    PolyMatrix U = detail::poly_zero(m, m, nvars);
    const int ustart = next;
    LaurentPoly::Exponent last(static_cast<size_t>(nvars), 0);
    for (int i = 0; i < m - 1; ++i) {
      U[static_cast<size_t>(i)][static_cast<size_t>(i)] = LaurentPoly::variable(nvars, ustart + i);
      last[static_cast<size_t>(ustart + i)] = -1;
    }
    U[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)] =
        LaurentPoly::monomial(nvars, last, Rational(1));
    next = ustart + (m - 1);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        U[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
    a = detail::poly_mul(L, U);
    PolyMatrix g_inv = detail::poly_mul(detail::upper_triangular_inverse(U),
                                        detail::lower_triangular_unit_inverse(L));
    b = detail::poly_transpose(g_inv);
  } else if (flavor == PairFlavor::Symmetric) {
    nvars = m * (m - 1) / 2 + (m - 1);
    int next = 0;
    PolyMatrix L = detail::poly_identity(m, nvars);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j)
        L[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
    PolyMatrix D = detail::poly_zero(m, m, nvars);
    LaurentPoly::Exponent last(static_cast<size_t>(nvars), 0);
    for (int i = 0; i < m - 1; ++i) {
      D[static_cast<size_t>(i)][static_cast<size_t>(i)] = LaurentPoly::variable(nvars, next + i);
      last[static_cast<size_t>(next + i)] = -1;
    }
    D[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)] =
        LaurentPoly::monomial(nvars, last, Rational(1));
    a = detail::poly_mul(detail::poly_mul(L, D), detail::poly_transpose(L));
    PolyMatrix Linv = detail::lower_triangular_unit_inverse(L);
    PolyMatrix Dinv = detail::upper_triangular_inverse(D);
    b = detail::poly_mul(detail::poly_mul(detail::poly_transpose(Linv), Dinv), Linv);
  } else {
    if (m % 2 != 0) throw InvalidFlavor("skew chart needs even size");
    // A = L D L^T with unit lower L (within-block subdiagonal entries
    // gauge-fixed to zero) and D = blockdiag(d_i [0 1; -1 0]),
    // d_1 ... d_{m/2} = 1, so Pf(A) = 1 identically.
    const int blocks = m / 2;
    nvars = m * (m - 1) / 2 - blocks + (blocks - 1);
    int next = 0;
    PolyMatrix L = detail::poly_identity(m, nvars);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) {
        if (i == j + 1 && j % 2 == 0) continue;  // gauge-fixed slot
        L[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
      }
    const int dstart = next;
    PolyMatrix D = detail::poly_zero(m, m, nvars);
    PolyMatrix Dinv = detail::poly_zero(m, m, nvars);
    LaurentPoly::Exponent last(static_cast<size_t>(nvars), 0);
    for (int blk = 0; blk < blocks - 1; ++blk) last[static_cast<size_t>(dstart + blk)] = -1;
    for (int blk = 0; blk < blocks; ++blk) {
      LaurentPoly d = blk < blocks - 1
                          ? LaurentPoly::variable(nvars, dstart + blk)
                          : LaurentPoly::monomial(nvars, last, Rational(1));
      LaurentPoly dinv = LaurentPoly::constant(nvars, Rational(1)).divide_by_monomial(d);
      const size_t r = static_cast<size_t>(2 * blk);
      D[r][r + 1] = d;
      D[r + 1][r] = -d;
      Dinv[r][r + 1] = dinv;
      Dinv[r + 1][r] = -dinv;
    }
    a = detail::poly_mul(detail::poly_mul(L, D), detail::poly_transpose(L));
    PolyMatrix Linv = detail::lower_triangular_unit_inverse(L);
    // B = -A^{-1} = L^{-T} blockdiag(d_i^{-1} [0 1; -1 0]) L^{-1}
    b = detail::poly_mul(detail::poly_mul(detail::poly_transpose(Linv), Dinv), Linv);
  }

  LaurentMap map;
  map.reserve(static_cast<size_t>(spec.ambient().dim()));
  for (const detail::PolyMatrix* mat : {&a, &b})
    for (auto [i, j] : spec.coord_slots())
      map.push_back((*mat)[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  std::string label = std::string("xinv-") + std::to_string(m);
  if (flavor == PairFlavor::Symmetric) label += "-sym";
  if (flavor == PairFlavor::Skew) label += "-skew";
  return ParamVariety(spec.ambient(), nvars, std::move(map), label);
}

/// Polynomial parametrization of the cone over X_deg(m,k): A = XA M YA^T
/// and B = CX E CY^T where the C-blocks are the complements of the XA/YA
/// column spans, so A B^T = B^T A = 0 identically.
inline ParamVariety build_xdeg_variety(int m, int k) {
  if (k < 0 || k > m) throw InvalidRange("rank bound out of range");
  const int r = m - k;
  const int nvars = m * m;  // M: k^2, X': r*k, Y': r*k, E: r^2
  using detail::PolyMatrix;
  int next = 0;
  PolyMatrix M = detail::poly_zero(k, k, nvars);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
  PolyMatrix Xp = detail::poly_zero(r, k, nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) Xp[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
  PolyMatrix Yp = detail::poly_zero(r, k, nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) Yp[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);
  PolyMatrix E = detail::poly_zero(r, r, nvars);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) E[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nvars, next++);

  auto stack_identity_under = [&](const PolyMatrix& lower, int top, int width) {
    PolyMatrix out = detail::poly_zero(top + static_cast<int>(lower.size()), width, nvars);
    for (int i = 0; i < top; ++i)
      out[static_cast<size_t>(i)][static_cast<size_t>(i)] = LaurentPoly::constant(nvars, Rational(1));
    for (size_t i = 0; i < lower.size(); ++i)
      for (size_t j = 0; j < lower[i].size(); ++j) out[static_cast<size_t>(top) + i][j] = lower[i][j];
    return out;
  };
  auto stack_negt_over_identity = [&](const PolyMatrix& p) {
    // [[ -P^T ], [ I_r ]] with P of shape r x k
    PolyMatrix out = detail::poly_zero(k + r, r, nvars);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < r; ++j)
        out[static_cast<size_t>(i)][static_cast<size_t>(j)] = -p[static_cast<size_t>(j)][static_cast<size_t>(i)];
    for (int j = 0; j < r; ++j)
      out[static_cast<size_t>(k + j)][static_cast<size_t>(j)] = LaurentPoly::constant(nvars, Rational(1));
    return out;
  };

  PolyMatrix XA = stack_identity_under(Xp, k, k);  // m x k
  PolyMatrix YA = stack_identity_under(Yp, k, k);
  PolyMatrix CX = stack_negt_over_identity(Xp);  // m x r
  PolyMatrix CY = stack_negt_over_identity(Yp);

  PolyMatrix A = k > 0 ? detail::poly_mul(detail::poly_mul(XA, M), detail::poly_transpose(YA))
                       : detail::poly_zero(m, m, nvars);
  PolyMatrix B = r > 0 ? detail::poly_mul(detail::poly_mul(CX, E), detail::poly_transpose(CY))
                       : detail::poly_zero(m, m, nvars);

  LaurentMap map;
  map.reserve(static_cast<size_t>(2 * m * m));
  for (const PolyMatrix* mat : {&A, &B})
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) map.push_back((*mat)[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  MatrixPairSpec spec(m, PairFlavor::Full);
  return ParamVariety(spec.ambient(), nvars, std::move(map),
                      "xdeg-" + std::to_string(m) + "," + std::to_string(k));
}

/// The three-fold Segre parametrization of X_deg(2,1) in pair coordinates.
inline ParamVariety build_segre_xdeg21() {
  const int nv = 3;  // affine chart on each factor
  auto t1 = LaurentPoly::variable(nv, 0);
  auto t2 = LaurentPoly::variable(nv, 1);
  auto t3 = LaurentPoly::variable(nv, 2);
  auto one = LaurentPoly::constant(nv, Rational(1));
  LaurentMap map = {
      one,      t2,       t1,       t1 * t2,   // A = [[1, t2], [t1, t1 t2]]
      t3 * t1 * t2, -(t3 * t1), -(t3 * t2), t3  // B = t3 [[t1 t2, -t1], [-t2, 1]]
  };
  MatrixPairSpec spec(2, PairFlavor::Full);
  return ParamVariety(spec.ambient(), nv, std::move(map), "segre-p1xp1xp1");
}

// --- tangent cones ----------------------------------------------------------

/// Generators of X_deg(m,k) as polynomials on the full pair space: the
/// entries of A B^T and B^T A plus the rank minors of both blocks.
inline std::vector<LaurentPoly> xdeg_generators(int m, int k) {
  const int nv = 2 * m * m;
  std::vector<LaurentPoly> gens;
  using detail::PolyMatrix;
  PolyMatrix A = detail::poly_zero(m, m, nv), B = detail::poly_zero(m, m, nv);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      A[static_cast<size_t>(i)][static_cast<size_t>(j)] = pair_var(m, avar(m, i, j));
      B[static_cast<size_t>(i)][static_cast<size_t>(j)] = pair_var(m, bvar(m, i, j));
    }
  PolyMatrix ABt = detail::poly_mul(A, detail::poly_transpose(B));
  PolyMatrix BtA = detail::poly_mul(detail::poly_transpose(B), A);
  for (const auto& row : ABt)
    for (const auto& e : row) gens.push_back(e);
  for (const auto& row : BtA)
    for (const auto& e : row) gens.push_back(e);

  auto poly_det = [](const PolyMatrix& mat) {
    std::function<LaurentPoly(std::vector<int>, std::vector<int>)> rec =
        [&](std::vector<int> rows, std::vector<int> cols) -> LaurentPoly {
      const int nvars = mat[0][0].nvars();
      if (rows.empty()) return LaurentPoly::constant(nvars, Rational(1));
      LaurentPoly acc(nvars);
      const int r0 = rows[0];
      std::vector<int> rrest(rows.begin() + 1, rows.end());
      for (size_t c = 0; c < cols.size(); ++c) {
        std::vector<int> crest;
        for (size_t s = 0; s < cols.size(); ++s)
          if (s != c) crest.push_back(cols[s]);
        LaurentPoly term = mat[static_cast<size_t>(r0)][static_cast<size_t>(cols[c])] * rec(rrest, crest);
        if (c % 2 == 1) term = -term;
        acc += term;
      }
      return acc;
    };
    std::vector<int> all(mat.size());
    for (size_t i = 0; i < mat.size(); ++i) all[i] = static_cast<int>(i);
    return rec(all, all);
  };
  auto keep_minor = [&](const PolyMatrix& mat, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    PolyMatrix sub = detail::poly_zero(static_cast<int>(rows.size()),
                                       static_cast<int>(cols.size()), nv);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j)
        sub[i][j] = mat[static_cast<size_t>(rows[i])][static_cast<size_t>(cols[j])];
    return poly_det(sub);
  };
  if (k + 1 <= m) {
    detail::subsets_of_size(m, k + 1, [&](const std::vector<int>& rows) {
      detail::subsets_of_size(m, k + 1, [&](const std::vector<int>& cols) {
        gens.push_back(keep_minor(A, rows, cols));
      });
    });
  }
  if (m - k + 1 <= m) {
    detail::subsets_of_size(m, m - k + 1, [&](const std::vector<int>& rows) {
      detail::subsets_of_size(m, m - k + 1, [&](const std::vector<int>& cols) {
        gens.push_back(keep_minor(B, rows, cols));
      });
    });
  }
  return gens;
}

/// Lowest-degree homogeneous parts of the generators after passing to the
/// chart chart_var = 1 and recentering at the given point.  Throws when the
/// center does not satisfy the generators.
inline std::vector<LaurentPoly> tangent_cone_lowest(
    const std::vector<LaurentPoly>& gens, int chart_var, const RatVector& center) {
  std::vector<LaurentPoly> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    LaurentPoly p = chart_var >= 0 ? g.substitute_value(chart_var, Rational(1)) : g;
    p = p.shift(center);
    if (p.is_zero()) continue;
    // constant term must vanish: the center lies on the chart zero set
    LaurentPoly::Exponent zero(static_cast<size_t>(p.nvars()), 0);
    auto it = p.terms().find(zero);
    if (it != p.terms().end()) throw CenterNotOnVariety();
    out.push_back(p.lowest_part());
  }
  return out;
}

/// Do the lowest parts cut out a linear space?  The linear parts are
/// eliminated first; the test passes when every higher-degree part reduces
/// to zero modulo them.
inline bool all_linear(const std::vector<LaurentPoly>& lowest_parts, int nvars) {
  std::vector<LaurentPoly> higher;
  RowSpan linear(nvars);
  for (const auto& p : lowest_parts) {
    if (p.is_zero()) continue;
    if (p.highest_degree() <= 1) {
      RatVector coef = RatVector::Zero(nvars);
      for (const auto& [e, c] : p.terms())
        for (size_t j = 0; j < e.size(); ++j)
          if (e[j] == 1) coef(static_cast<Index>(j)) = c;
      linear.insert(coef);
    } else {
      higher.push_back(p);
    }
  }
  if (higher.empty()) return true;
  // express each pivot variable as a combination of the free ones
  const RatMatrix& rows = linear.rows();
  std::vector<std::pair<int, LaurentPoly>> substitutions;
  for (Index r = 0; r < rows.rows(); ++r) {
    int pivot = -1;
    for (Index j = 0; j < nvars; ++j)
      if (rows(r, j) != 0) {
        pivot = static_cast<int>(j);
        break;
      }
    LaurentPoly expr(nvars);
    for (Index j = pivot + 1; j < nvars; ++j) {
      if (rows(r, j) == 0) continue;
      expr -= rows(r, j) * LaurentPoly::variable(nvars, static_cast<int>(j));
    }
    substitutions.emplace_back(pivot, std::move(expr));
  }
  for (LaurentPoly p : higher) {
    for (const auto& [var, expr] : substitutions) p = p.substitute_poly(var, expr);
    if (!p.is_zero()) return false;
  }
  return true;
}

/// The smoothness signal of X_deg(m,k) from the lowest parts of its
/// generators at the distinguished points p1 = (E_mm, 0) and p2 = (0, E_mm).
inline bool xdeg_smooth_signal(int m, int k) {
  auto gens = xdeg_generators(m, k);
  const int nv = 2 * m * m;
  bool ok = true;
  if (k >= 1) {  // p1 lies on X_deg(m,k) only when rank A = 1 is allowed
    RatVector center = RatVector::Zero(nv);
    ok = ok && all_linear(tangent_cone_lowest(gens, avar(m, m - 1, m - 1), center), nv);
  }
  if (k <= m - 1) {
    RatVector center = RatVector::Zero(nv);
    ok = ok && all_linear(tangent_cone_lowest(gens, bvar(m, m - 1, m - 1), center), nv);
  }
  return ok;
}

// --- the spinor-chart identity ---------------------------------------------

namespace detail {

/// Pfaffian of the 6x6 skew matrix with rows/cols i and j removed
/// (0-based), entries of any ring element type handled by the caller.
template <typename Entry, typename PfFn>
Entry pf_minor(const std::vector<std::vector<Entry>>& g, int i, int j, PfFn pf) {
  std::vector<int> keep;
  for (int r = 0; r < 6; ++r)
    if (r != i && r != j) keep.push_back(r);
  std::vector<std::vector<Entry>> sub(4, std::vector<Entry>(4, g[0][0]));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) sub[static_cast<size_t>(r)][static_cast<size_t>(c)] = g[static_cast<size_t>(keep[static_cast<size_t>(r)])][static_cast<size_t>(keep[static_cast<size_t>(c)])];
  return pf(sub);
}

}  // namespace detail

/// Build the matrix pair of the spinor chart from a 6x6 skew matrix whose
/// entries live in any commutative ring (rationals or polynomials).
/// Indices in the layout are 1-based as usual for Pfaffian minors.  The
/// border signs are normalized so that the whole quadric battery of the
/// 4x4 invertible-pair family vanishes identically (the na\"ive
/// unsigned-border layout satisfies none of the diagonal equations).
template <typename Entry, typename PfFn, typename NegFn, typename OneFn>
std::pair<std::vector<std::vector<Entry>>, std::vector<std::vector<Entry>>>
spinor_chart_pair(const std::vector<std::vector<Entry>>& g, PfFn pf, NegFn neg,
                  OneFn one) {
  auto P = [&](int i, int j) { return detail::pf_minor<Entry>(g, i - 1, j - 1, pf); };
  auto G = [&](int i, int j) { return g[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)]; };
  std::vector<std::vector<Entry>> A{
      {P(1, 4), neg(P(1, 5)), P(1, 6), neg(G(2, 3))},
      {neg(P(2, 4)), P(2, 5), neg(P(2, 6)), G(1, 3)},
      {P(3, 4), neg(P(3, 5)), P(3, 6), neg(G(1, 2))},
      {G(5, 6), neg(G(4, 6)), G(4, 5), neg(one())}};
  std::vector<std::vector<Entry>> B{
      {G(1, 4), G(1, 5), G(1, 6), P(2, 3)},
      {G(2, 4), G(2, 5), G(2, 6), P(1, 3)},
      {G(3, 4), G(3, 5), G(3, 6), P(1, 2)},
      {neg(P(5, 6)), neg(P(4, 6)), neg(P(4, 5)), neg(pf(g))}};
  return {A, B};
}

struct S6Report {
  bool pass = true;
  Index trials = 0;
  Index violations = 0;
};

/// The chart of the 15-dimensional spinor variety through Pfaffian minors
/// satisfies every quadric of X_inv(4): the 30 trace quadrics and the 36
/// half-minor quadrics.  Checked exactly on deterministic random skew
/// matrices, or fully symbolically.
inline S6Report s6_identity_check(Index trials, std::uint64_t seed,
                                  bool symbolic = false) {
  S6Report report;
  report.trials = trials;

  auto check_pair = [&](const PairPoint& p) {
    bool ok = y_membership(p).violated_quadrics == 0;
    // also the diagonal equality linking the two scalar products
    ok = ok && (p.A * p.B.transpose())(0, 0) == (p.B.transpose() * p.A)(0, 0);
    detail::subsets_of_size(4, 2, [&](const std::vector<int>& I) {
      detail::subsets_of_size(4, 2, [&](const std::vector<int>& J) {
        std::vector<int> Ic, Jc;
        for (int i = 0; i < 4; ++i) {
          if (std::find(I.begin(), I.end(), i) == I.end()) Ic.push_back(i);
          if (std::find(J.begin(), J.end(), i) == J.end()) Jc.push_back(i);
        }
        long se = 0;
        for (int i : I) se += i;
        for (int j : J) se += j;
        const Rational lhs = det(remove_rows_cols(p.A, I, J));
        Rational rhs = det(remove_rows_cols(p.B, Ic, Jc));
        if (se % 2 != 0) rhs = -rhs;
        if (lhs != rhs) ok = false;
      });
    });
    return ok;
  };

  if (symbolic) {
    const int nv = 15;
    std::vector<std::vector<LaurentPoly>> g(6, std::vector<LaurentPoly>(6, LaurentPoly(nv)));
    int next = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] = LaurentPoly::variable(nv, next);
        g[static_cast<size_t>(j)][static_cast<size_t>(i)] = -LaurentPoly::variable(nv, next);
        ++next;
      }
    auto [A, B] = spinor_chart_pair<LaurentPoly>(
        g, [](const std::vector<std::vector<LaurentPoly>>& s) { return pfaffian_symbolic(s); },
        [](const LaurentPoly& p) { return -p; },
        [nv]() { return LaurentPoly::constant(nv, Rational(1)); });
    // assemble the flattened point with polynomial entries and evaluate the
    // quadrics symbolically through composition
    LaurentMap coords;
    for (const auto& mat : {A, B})
      for (const auto& row : mat)
        for (const auto& e : row) coords.push_back(e);
    bool ok = true;
    for (const auto& q : y_quadrics(4)) {
      LaurentPoly acc(nv);
      for (const auto& [e, c] : q.terms()) {
        LaurentPoly term = LaurentPoly::constant(nv, c);
        for (size_t v = 0; v < e.size(); ++v)
          for (long rep = 0; rep < e[v]; ++rep) term = term * coords[v];
        acc += term;
      }
      if (!acc.is_zero()) ok = false;
    }
    // half minors, symbolically
    detail::subsets_of_size(4, 2, [&](const std::vector<int>& I) {
      detail::subsets_of_size(4, 2, [&](const std::vector<int>& J) {
        std::vector<int> Ikeep, Jkeep, Ickeep, Jckeep;
        for (int i = 0; i < 4; ++i) {
          if (std::find(I.begin(), I.end(), i) == I.end()) Ikeep.push_back(i);
          if (std::find(J.begin(), J.end(), i) == J.end()) Jkeep.push_back(i);
        }
        // lhs: det of A with rows I, cols J removed = keep complements
        auto minor2 = [&](const std::vector<std::vector<LaurentPoly>>& mat,
                          const std::vector<int>& rows, const std::vector<int>& cols) {
          return mat[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[0])] * mat[static_cast<size_t>(rows[1])][static_cast<size_t>(cols[1])] -
                 mat[static_cast<size_t>(rows[0])][static_cast<size_t>(cols[1])] * mat[static_cast<size_t>(rows[1])][static_cast<size_t>(cols[0])];
        };
        long se = 0;
        for (int i : I) se += i;
        for (int j : J) se += j;
        LaurentPoly lhs = minor2(A, Ikeep, Jkeep);
        LaurentPoly rhs = minor2(B, I, J);
        if (se % 2 != 0) rhs = -rhs;
        if (!(lhs - rhs).is_zero()) ok = false;
      });
    });
    report.pass = ok;
    if (!ok) report.violations = 1;
    return report;
  }

  std::vector<int> bad(static_cast<size_t>(trials), 0);
  parallel_for_index(static_cast<size_t>(trials), [&](size_t trial) {
    std::vector<std::vector<Rational>> g(6, std::vector<Rational>(6, Rational(0)));
    int slot = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        const Rational v = small_rational(seed, trial, static_cast<std::uint64_t>(slot++));
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        g[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
      }
    auto pf_exact = [](const std::vector<std::vector<Rational>>& s) {
      RatMatrix mm(static_cast<Index>(s.size()), static_cast<Index>(s.size()));
      for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j) mm(static_cast<Index>(i), static_cast<Index>(j)) = s[i][j];
      return pfaffian(mm);
    };
    auto [A, B] = spinor_chart_pair<Rational>(
        g, pf_exact, [](const Rational& r) { return -r; }, []() { return Rational(1); });
    PairPoint p{rat_zero(4, 4), rat_zero(4, 4)};
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) {
        p.A(i, j) = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
        p.B(i, j) = B[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
    if (!check_pair(p)) bad[trial] = 1;
  });
  for (int b : bad) report.violations += b;
  report.pass = report.violations == 0;
  return report;
}

// --- singularity probe -------------------------------------------------------

struct SingularityProbe {
  PairPoint direction;   // lowest-order direction of the diagonal curve at p1
  bool in_orbit = false; // rank pattern (k, m-k-1) with zero products
  bool curve_certified = false;  // the curve lies in the invertible orbit
};

/// The diagonal curve witnessing a degenerate tangent direction of
/// X_inv(m) at p1: confirms symbolically that the curve stays in the
/// invertible locus and that its leading direction has the degenerate
/// rank pattern.
inline SingularityProbe singularity_probe(int m, int k) {
  if (m < 4) throw InvalidRange("probe needs matrix size at least 4");
  const int kmax = (m + 1) / 2 - 2;
  if (k < 0 || k > kmax) throw InvalidRange("rank parameter out of range");
  const long beta = 2;
  const long alpha = m - 2 * k - 2;

  // exponent layout of the curve: A = diag(t^alpha x k, t^{alpha+beta} x (m-k-1), 1),
  // B = diag(t^{alpha+beta} x k, t^alpha x (m-k-1), t^{2 alpha + beta})
  std::vector<long> expA(static_cast<size_t>(m)), expB(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    if (i < k) {
      expA[static_cast<size_t>(i)] = alpha;
      expB[static_cast<size_t>(i)] = alpha + beta;
    } else if (i < m - 1) {
      expA[static_cast<size_t>(i)] = alpha + beta;
      expB[static_cast<size_t>(i)] = alpha;
    } else {
      expA[static_cast<size_t>(i)] = 0;
      expB[static_cast<size_t>(i)] = 2 * alpha + beta;
    }
  }

  SingularityProbe out;

  // certification: the rescaled representative t^{-alpha-1} (A, B) is an
  // honest (g, (g^{-1})^T) pair of determinant one
  long det_exp = 0;
  for (int i = 0; i < m; ++i) det_exp += expA[static_cast<size_t>(i)] - (alpha + 1);
  bool cert = det_exp == 0;
  for (int i = 0; i < m; ++i) {
    // B entry must be the inverse of the A entry after rescaling
    const long a_scaled = expA[static_cast<size_t>(i)] - (alpha + 1);
    const long b_scaled = expB[static_cast<size_t>(i)] - (alpha + 1);
    cert = cert && (a_scaled + b_scaled == 0);
  }
  // the Y quadrics vanish along the curve: A B^T and B^T A are scalar
  {
    const long prod = expA[0] + expB[0];
    for (int i = 0; i < m; ++i)
      cert = cert && (expA[static_cast<size_t>(i)] + expB[static_cast<size_t>(i)] == prod);
  }
  // the cubic minor identities hold as Laurent identities on the rescaled curve
  if (cert) {
    RatMatrix probeA = rat_zero(m, m), probeB = rat_zero(m, m);
    // evaluate the rescaled curve at t = 2 exactly and run the battery
    const Rational t(2);
    for (int i = 0; i < m; ++i) {
      probeA(i, i) = pow_int(t, expA[static_cast<size_t>(i)] - (alpha + 1));
      probeB(i, i) = pow_int(t, expB[static_cast<size_t>(i)] - (alpha + 1));
    }
    cert = cert && det(probeA) == 1 && probeB == inverse(probeA).transpose() &&
           equation_battery({probeA, probeB}).all();
  }
  out.curve_certified = cert;

  // leading direction in the chart a_mm = 1 after removing the center p1
  long lowest = 0;
  bool found = false;
  auto consider = [&](long e) {
    if (e <= 0) return;
    if (!found || e < lowest) {
      lowest = e;
      found = true;
    }
  };
  for (int i = 0; i < m; ++i) {
    consider(expA[static_cast<size_t>(i)]);
    consider(expB[static_cast<size_t>(i)]);
  }
  PairPoint dir{rat_zero(m, m), rat_zero(m, m)};
  for (int i = 0; i < m - 1; ++i) {
    if (expA[static_cast<size_t>(i)] == lowest) dir.A(i, i) = 1;
    if (expB[static_cast<size_t>(i)] == lowest) dir.B(i, i) = 1;
  }
  out.direction = dir;
  const bool zero_products = RatMatrix(dir.A * dir.B.transpose()).isZero(0) &&
                             RatMatrix(dir.B.transpose() * dir.A).isZero(0);
  bool border_zero = true;
  for (int i = 0; i < m; ++i)
    border_zero = border_zero && dir.A(m - 1, i) == 0 && dir.A(i, m - 1) == 0 &&
                  dir.B(m - 1, i) == 0 && dir.B(i, m - 1) == 0;
  out.in_orbit = zero_products && border_zero && rank(dir.A) == k &&
                 rank(dir.B) == m - k - 1;
  return out;
}

}  // namespace legkit
