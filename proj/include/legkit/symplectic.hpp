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

#include "legkit/matrix.hpp"

namespace legkit {

/// An even-dimensional rational vector space with a fixed nondegenerate
/// skew form given by its matrix J, so omega(u, v) = u^T J v.
class SymplecticSpace {
 public:
  SymplecticSpace(Index dim, RatMatrix j) : dim_(dim), j_(std::move(j)) {
    if (dim_ <= 0 || dim_ % 2 != 0) throw SizeMismatch("dimension must be even and positive");
    if (j_.rows() != dim_ || j_.cols() != dim_) throw SizeMismatch("J size mismatch");
    if (j_.transpose() != -j_) throw NotSkew("form matrix is not skew");
    if (rank(j_) != dim_) throw SingularInput("form matrix is degenerate");
  }

  /// Standard form on Q^{2n}: J = [0 I; -I 0].
  static SymplecticSpace standard(Index n) {
    RatMatrix j = rat_zero(2 * n, 2 * n);
    for (Index i = 0; i < n; ++i) {
      j(i, n + i) = 1;
      j(n + i, i) = -1;
    }
    return SymplecticSpace(2 * n, std::move(j));
  }

  Index dim() const { return dim_; }
  Index half_dim() const { return dim_ / 2; }
  const RatMatrix& J() const { return j_; }

  Rational omega(const RatVector& u, const RatVector& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw SizeMismatch("omega argument size");
    return (u.transpose() * j_ * v)(0, 0);
  }

  bool is_standard() const {
    return j_ == SymplecticSpace::standard(half_dim()).J();
  }

  bool operator==(const SymplecticSpace& o) const {
    return dim_ == o.dim_ && j_ == o.j_;
  }

 private:
  Index dim_;
  RatMatrix j_;
};

/// A linear subspace of a symplectic space, stored as an independent
/// column basis.
class Subspace {
 public:
  Subspace(SymplecticSpace space, RatMatrix basis)
      : space_(std::move(space)), basis_(std::move(basis)) {
    if (basis_.rows() != space_.dim()) throw SizeMismatch("basis row count");
    if (basis_.cols() > 0 && rank(basis_) != basis_.cols())
      throw SizeMismatch("basis vectors are dependent");
  }

  const SymplecticSpace& space() const { return space_; }
  const RatMatrix& basis() const { return basis_; }
  Index dim() const { return basis_.cols(); }

  bool contains(const RatVector& v) const {
    if (basis_.cols() == 0) return v.isZero(0);
    RatMatrix aug(basis_.rows(), basis_.cols() + 1);
    aug << basis_, v;
    return rank(aug) == basis_.cols();
  }

  bool contains(const Subspace& other) const {
    RatMatrix aug(basis_.rows(), basis_.cols() + other.basis_.cols());
    aug << basis_, other.basis_;
    return rank(aug) == rank(basis_);
  }

  Index intersection_dim(const Subspace& other) const {
    RatMatrix aug(basis_.rows(), basis_.cols() + other.basis_.cols());
    aug << basis_, other.basis_;
    return dim() + other.dim() - rank(aug);
  }

 private:
  SymplecticSpace space_;
  RatMatrix basis_;
};

enum class SubspaceClass { Isotropic, Coisotropic, Lagrangian, Symplectic, None };

inline const char* to_string(SubspaceClass c) {
  switch (c) {
    case SubspaceClass::Isotropic: return "isotropic";
    case SubspaceClass::Coisotropic: return "coisotropic";
    case SubspaceClass::Lagrangian: return "lagrangian";
    case SubspaceClass::Symplectic: return "symplectic";
    default: return "none";
  }
}

struct SubspaceClassification {
  SubspaceClass cls;
  Subspace perp;
};

/// omega-perpendicular complement: { v : omega(v, w) = 0 for all w in W }.
inline Subspace omega_perp(const Subspace& w) {
  const RatMatrix constraints = (w.space().J() * w.basis()).transpose();
  return Subspace(w.space(), mat_kernel(constraints));
}

/// The four containment tests between W and its perp.  The conditions can
/// overlap only at the extremes (the zero subspace, the full space), where
/// "symplectic" wins; W = perp dominates everything as "Lagrangian".
inline SubspaceClassification classify_subspace(const Subspace& w) {
  Subspace perp = omega_perp(w);
  const bool iso = perp.contains(w);
  const bool coiso = w.contains(perp);
  SubspaceClass cls = SubspaceClass::None;
  if (iso && coiso) {
    cls = SubspaceClass::Lagrangian;
  } else if (w.intersection_dim(perp) == 0) {
    cls = SubspaceClass::Symplectic;
  } else if (iso) {
    cls = SubspaceClass::Isotropic;
  } else if (coiso) {
    cls = SubspaceClass::Coisotropic;
  }
  return {cls, std::move(perp)};
}

/// Basis of the intersection of two column spans.
inline RatMatrix span_intersection(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return RatMatrix(a.rows(), 0);
  RatMatrix stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  RatMatrix null = mat_kernel(stacked);
  if (null.cols() == 0) return RatMatrix(a.rows(), 0);
  RatMatrix inter = a * null.topRows(a.cols());
  return column_space_basis(inter);
}

/// Symplectic reduction of a subspace: the quotient W / (W cap W^perp)
/// with the induced (nondegenerate) form, plus an explicit projection
/// (valid on vectors of W).  A Lagrangian W reduces to dimension 0, which
/// SymplecticSpace cannot represent, hence the optional.
struct ReductionResult {
  Index quotient_dim = 0;
  std::optional<SymplecticSpace> quotient;  // present when quotient_dim > 0
  RatMatrix representatives;
  RatMatrix projection;
  Subspace radical;

  RatVector project(const RatVector& w) const { return projection * w; }

  /// Image of a subspace of W under the projection.
  RatMatrix project_span(const RatMatrix& basis) const {
    return column_space_basis(projection * basis);
  }
};

inline ReductionResult symplectic_reduce(const Subspace& w) {
  const SymplecticSpace& space = w.space();
  const Index n2 = space.dim();
  Subspace perp = omega_perp(w);
  RatMatrix radical = span_intersection(w.basis(), perp.basis());
  const Index r = radical.cols();
  const Index q = w.dim() - r;

  // Extend the radical basis to a basis of W, taking columns of W greedily.
  RowSpan tracker(n2);
  for (Index c = 0; c < r; ++c) tracker.insert(radical.col(c));
  RatMatrix reps(n2, q);
  Index got = 0;
  for (Index c = 0; c < w.basis().cols() && got < q; ++c) {
    if (tracker.insert(w.basis().col(c))) {
      reps.col(got++) = w.basis().col(c);
    }
  }

  // Projection: coordinates in the [radical | reps] basis, keeping the reps
  // part.  M has full column rank, so M^T M is invertible over Q.
  RatMatrix m(n2, r + q);
  if (r > 0) m.leftCols(r) = radical;
  if (q > 0) m.rightCols(q) = reps;
  RatMatrix proj(q, n2);
  if (q > 0 && r + q > 0) {
    RatMatrix gram_inv = inverse(RatMatrix(m.transpose() * m));
    RatMatrix coords = gram_inv * m.transpose();  // (r+q) x n2
    proj = coords.bottomRows(q);
  } else {
    proj = rat_zero(q, n2);
  }

  ReductionResult out{q, std::nullopt, reps, proj,
                      Subspace(space, std::move(radical))};
  if (q > 0) {
    RatMatrix jq(q, q);
    for (Index i = 0; i < q; ++i)
      for (Index j = 0; j < q; ++j) jq(i, j) = space.omega(reps.col(i), reps.col(j));
    out.quotient.emplace(q, std::move(jq));
  }
  return out;
}

/// g in sp(V): g^T J + J g = 0, equivalently J g symmetric.
inline bool in_sp(const RatMatrix& g, const SymplecticSpace& s) {
  return RatMatrix(g.transpose() * s.J() + s.J() * g).isZero(0);
}

/// g weks-symplectic: g^T J - J g = 0, equivalently J g skew.
inline bool in_wsp(const RatMatrix& g, const SymplecticSpace& s) {
  return RatMatrix(g.transpose() * s.J() - s.J() * g).isZero(0);
}

struct SpWspSplit {
  RatMatrix g_plus;   // symplectic part
  RatMatrix g_minus;  // weks-symplectic part
};

/// Unique decomposition g = g_plus + g_minus with J g_plus symmetric and
/// J g_minus skew.  For a symplectic basis (J^2 = -Id) this is
/// g_plus = (g + J g^T J)/2, g_minus = (g - J g^T J)/2.
inline SpWspSplit sp_wsp_split(const RatMatrix& g, const SymplecticSpace& s) {
  if (g.rows() != s.dim() || g.cols() != s.dim())
    throw SizeMismatch("sp_wsp_split matrix size");
  const RatMatrix jg = s.J() * g;
  const RatMatrix sym = (jg + jg.transpose()) / Rational(2);
  const RatMatrix skew = (jg - jg.transpose()) / Rational(2);
  const RatMatrix jinv = inverse(s.J());
  return {jinv * sym, jinv * skew};
}

/// A quadratic form q(v) = v^T M v with M symmetric.
struct QuadraticForm {
  SymplecticSpace space;
  RatMatrix M;

  QuadraticForm(SymplecticSpace s, RatMatrix m) : space(std::move(s)), M(std::move(m)) {
    if (M.rows() != space.dim() || M.cols() != space.dim())
      throw SizeMismatch("quadratic form size");
    if (M.transpose() != M) throw SizeMismatch("quadratic form matrix not symmetric");
  }

  Rational value(const RatVector& v) const { return (v.transpose() * M * v)(0, 0); }
};

/// The quadric-to-stabilizer map q -> 2 J M(q).  Lands in sp(V).
inline RatMatrix rho(const QuadraticForm& q) {
  return Rational(2) * q.space.J() * q.M;
}

struct BracketClosure {
  bool closed = true;
  std::optional<std::pair<int, int>> witness;  // indices of a violating pair
  std::optional<RatMatrix> witness_bracket;
};

/// Is the span of the given matrices closed under [a,b] = ab - ba?
inline BracketClosure is_bracket_closed(const std::vector<RatMatrix>& span) {
  BracketClosure out;
  if (span.empty()) return out;
  const Index n = span[0].rows();
  RowSpan tracker(n * n);
  for (const auto& m : span) {
    if (m.rows() != n || m.cols() != n) throw SizeMismatch("bracket span sizes differ");
    tracker.insert(flatten_row_major(m));
  }
  for (size_t i = 0; i < span.size(); ++i) {
    for (size_t j = i + 1; j < span.size(); ++j) {
      RatMatrix br = span[i] * span[j] - span[j] * span[i];
      if (!tracker.contains(flatten_row_major(br))) {
        out.closed = false;
        out.witness = {static_cast<int>(i), static_cast<int>(j)};
        out.witness_bracket = std::move(br);
        return out;
      }
    }
  }
  return out;
}

/// Characteristic polynomial coefficients c_0..c_n with
/// det(xI - A) = sum c_k x^k, by the Faddeev-LeVerrier recursion.
inline std::vector<Rational> char_poly(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw SizeMismatch("char_poly of non-square matrix");
  const Index n = a.rows();
  std::vector<Rational> c(static_cast<size_t>(n) + 1);
  c[static_cast<size_t>(n)] = 1;
  RatMatrix m = rat_zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<size_t>(n - k + 1)] * rat_identity(n);
    Rational tr(0);
    RatMatrix am = a * m;
    for (Index i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<size_t>(n - k)] = -tr / Rational(k);
  }
  return c;
}

/// All rational roots of the characteristic polynomial, with multiplicity
/// ignored (each distinct eigenvalue once).  Uses the rational root theorem
/// on the integer-scaled polynomial; irrational spectrum parts are simply
/// not reported.
inline std::vector<Rational> rational_eigenvalues(const RatMatrix& a) {
  std::vector<Rational> coeffs = char_poly(a);
  // integer-scale
  Int lcm_den(1);
  for (const auto& c : coeffs) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
  std::vector<Int> ic;
  ic.reserve(coeffs.size());
  for (const auto& c : coeffs) ic.push_back(numerator(c * Rational(lcm_den)));
  // strip trailing zero constant terms: root 0
  std::vector<Rational> roots;
  size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  if (low >= ic.size()) return roots;
  const Int a0 = boost::multiprecision::abs(ic[low]);
  const Int an = boost::multiprecision::abs(ic.back());
  auto divisors = [](const Int& v) {
    std::vector<Int> d;
    for (Int i = 1; i * i <= v; ++i) {
      if (v % i == 0) {
        d.push_back(i);
        if (i != v / i) d.push_back(v / i);
      }
    }
    return d;
  };
  auto eval_poly = [&](const Rational& x) {
    Rational acc(0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  };
  for (const Int& p : divisors(a0)) {
    for (const Int& q : divisors(an)) {
      for (int sign : {1, -1}) {
        Rational cand = ratio(sign * p, q);
        if (eval_poly(cand) == 0) {
          bool seen = false;
          for (const auto& r : roots) seen = seen || (r == cand);
          if (!seen) roots.push_back(cand);
        }
      }
    }
  }
  return roots;
}

/// Basis of the lambda-eigenspace of a.
inline RatMatrix eigenspace(const RatMatrix& a, const Rational& lambda) {
  return mat_kernel(RatMatrix(a - lambda * rat_identity(a.rows())));
}

}  // namespace legkit
