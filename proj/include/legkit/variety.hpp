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
#include <string>
#include <utility>
#include <vector>

#include "legkit/laurent.hpp"
#include "legkit/modkernel.hpp"
#include "legkit/poisson.hpp"
#include "legkit/rng.hpp"
#include "legkit/rootfind.hpp"
#include "legkit/symplectic.hpp"
#include "legkit/threads.hpp"

namespace legkit {

/// A parametrized affine cone in a symplectic space: one Laurent polynomial
/// per ambient coordinate, in k parameters.  The associated projective
/// variety is the closure of the image.
class ParamVariety {
 public:
  ParamVariety(SymplecticSpace ambient, int params, LaurentMap map,
               std::string label)
      : ambient_(std::move(ambient)),
        params_(params),
        map_(std::move(map)),
        label_(std::move(label)) {
    if (static_cast<Index>(map_.size()) != ambient_.dim())
      throw SizeMismatch("map component count != ambient dimension");
    if (params_ < 0 || params_ > ambient_.half_dim())
      throw SizeMismatch("parameter count exceeds half the ambient dimension");
    for (const auto& f : map_)
      if (f.nvars() != params_) throw SizeMismatch("map component variable count");
  }

  const SymplecticSpace& ambient() const { return ambient_; }
  int params() const { return params_; }
  const LaurentMap& map() const { return map_; }
  const std::string& label() const { return label_; }

  RatVector eval(const RatVector& t) const { return laurent_eval(map_, t); }
  Eigen::VectorXd eval_double(const Eigen::VectorXd& t) const {
    return laurent_eval_double(map_, t);
  }
  RatMatrix jacobian(const RatVector& t) const { return laurent_jacobian(map_, t); }

 private:
  SymplecticSpace ambient_;
  int params_;
  LaurentMap map_;
  std::string label_;
};

/// Apply an exact linear change of ambient coordinates to the map.  The
/// form matrix transforms contravariantly so that omega values at matched
/// points are preserved exactly when s is symplectic.
inline ParamVariety linear_transform(const RatMatrix& s, const ParamVariety& x) {
  if (s.rows() != x.ambient().dim() || s.cols() != x.ambient().dim())
    throw SizeMismatch("transform size");
  LaurentMap map(static_cast<size_t>(s.rows()), LaurentPoly(x.params()));
  for (Index i = 0; i < s.rows(); ++i)
    for (Index j = 0; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      map[static_cast<size_t>(i)] += s(i, j) * x.map()[static_cast<size_t>(j)];
    }
  return ParamVariety(x.ambient(), x.params(), std::move(map),
                      x.label() + "-transformed");
}

/// Deterministic parameter draw: nonzero small-height rationals derived
/// from (seed, index); retries (up to 64 times) until the image vector is
/// nonzero.
inline RatVector sample_params(const ParamVariety& x, std::uint64_t seed,
                               std::uint64_t index) {
  const int k = x.params();
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    RatVector t(k);
    for (int j = 0; j < k; ++j)
      t(j) = small_rational(seed, index, static_cast<std::uint64_t>(j), attempt);
    RatVector image = x.eval(t);
    if (!image.isZero(0)) return t;
  }
  throw DegenerateSample("map image is zero for 64 parameter draws");
}

inline RatVector sample_point(const ParamVariety& x, std::uint64_t seed,
                              std::uint64_t index) {
  return x.eval(sample_params(x, seed, index));
}

/// Tangent space to the affine cone at x(t): the column-reduced span of
/// the point itself together with the Jacobian image.
inline Subspace cone_tangent_space(const ParamVariety& x, const RatVector& t) {
  RatVector p = x.eval(t);
  if (p.isZero(0)) throw DegenerateSample("cone tangent at the zero vector");
  RatMatrix stacked(x.ambient().dim(), 1 + x.params());
  stacked.col(0) = p;
  stacked.rightCols(x.params()) = x.jacobian(t);
  return Subspace(x.ambient(), column_space_basis(stacked));
}

/// Verification verdict for a sampled variety.
struct VarietyReport {
  std::string label;
  Index samples = 0;
  std::vector<Index> tangent_dims;
  std::vector<bool> lagrangian;
  bool all_lagrangian = false;
  bool not_full_dimensional = false;   // every sampled tangent had dim < n
  std::optional<Index> i2_dim;
  std::optional<Index> stab_dim;
  bool nondegenerate = false;
  Index point_rank = 0;
  std::string failure;  // name of the first failing check, empty when passing

  bool pass() const { return all_lagrangian; }
};

/// Exact Lagrangian certification at deterministically sampled points.
/// A sample passes when its cone tangent space has dimension n and the
/// form vanishes identically on it.
inline VarietyReport legendrian_check(const ParamVariety& x, Index samples,
                                      std::uint64_t seed) {
  VarietyReport report;
  report.label = x.label();
  report.samples = samples;
  report.tangent_dims.assign(static_cast<size_t>(samples), 0);
  report.lagrangian.assign(static_cast<size_t>(samples), false);
  const Index n = x.ambient().half_dim();
  std::vector<RatVector> points(static_cast<size_t>(samples));
  std::vector<std::string> failures(static_cast<size_t>(samples));

  parallel_for_index(static_cast<size_t>(samples), [&](size_t i) {
    RatVector t = sample_params(x, seed, i);
    Subspace tangent = cone_tangent_space(x, t);
    points[i] = x.eval(t);
    report.tangent_dims[i] = tangent.dim();
    const RatMatrix gram =
        tangent.basis().transpose() * x.ambient().J() * tangent.basis();
    const bool flat = gram.isZero(0);
    report.lagrangian[i] = flat && tangent.dim() == n;
    if (!report.lagrangian[i]) {
      if (!flat) {
        for (Index a = 0; a < gram.rows() && failures[i].empty(); ++a)
          for (Index b = 0; b < gram.cols() && failures[i].empty(); ++b)
            if (gram(a, b) != 0)
              failures[i] = "omega(basis " + std::to_string(a) + ", basis " +
                            std::to_string(b) + ") = " + to_string(gram(a, b)) +
                            " at sample " + std::to_string(i);
      } else {
        failures[i] = "tangent dimension " + std::to_string(tangent.dim()) +
                      " != " + std::to_string(n) + " at sample " + std::to_string(i);
      }
    }
  });

  report.all_lagrangian = true;
  bool any_full = false;
  for (size_t i = 0; i < static_cast<size_t>(samples); ++i) {
    report.all_lagrangian = report.all_lagrangian && report.lagrangian[i];
    any_full = any_full || report.tangent_dims[i] == n;
    if (report.failure.empty() && !failures[i].empty()) report.failure = failures[i];
  }
  report.not_full_dimensional = samples > 0 && !any_full;
  if (report.not_full_dimensional) report.failure = "NotFullDimensional";

  RatMatrix point_mat(x.ambient().dim(), samples);
  for (Index i = 0; i < samples; ++i) point_mat.col(i) = points[static_cast<size_t>(i)];
  report.point_rank = samples > 0 ? rank(point_mat) : 0;
  report.nondegenerate = report.point_rank == x.ambient().dim();
  return report;
}

/// All quadratic forms vanishing on the sampled variety: the kernel of the
/// evaluation matrix of degree-2 monomials.  Internally re-verified on 20
/// fresh samples.
inline std::vector<QuadraticForm> interpolate_quadrics(const ParamVariety& x,
                                                       Index oversample,
                                                       std::uint64_t seed) {
  const Index dim = x.ambient().dim();
  const Index nmono = dim * (dim + 1) / 2;
  if (oversample < 2 * nmono)
    throw InvalidRange("oversample below twice the quadric count");

  RatMatrix evaluations(oversample, nmono);
  parallel_for_index(static_cast<size_t>(oversample), [&](size_t i) {
    RatVector p = sample_point(x, seed, i);
    Index k = 0;
    for (Index a = 0; a < dim; ++a)
      for (Index b = a; b < dim; ++b)
        evaluations(static_cast<Index>(i), k++) = p(a) * p(b);
  });
  RatMatrix kernel = mat_kernel_fast(evaluations);

  std::vector<QuadraticForm> quadrics;
  quadrics.reserve(static_cast<size_t>(kernel.cols()));
  for (Index c = 0; c < kernel.cols(); ++c) {
    RatMatrix m = rat_zero(dim, dim);
    Index k = 0;
    for (Index a = 0; a < dim; ++a) {
      for (Index b = a; b < dim; ++b, ++k) {
        if (a == b) {
          m(a, a) = kernel(k, c);
        } else {
          m(a, b) = kernel(k, c) / Rational(2);
          m(b, a) = m(a, b);
        }
      }
    }
    quadrics.emplace_back(x.ambient(), std::move(m));
  }

  for (Index i = 0; i < 20; ++i) {
    RatVector p = sample_point(x, seed, static_cast<std::uint64_t>(oversample + i));
    for (const auto& q : quadrics)
      if (q.value(p) != 0)
        throw Error("interpolated quadric fails on a fresh sample");
  }
  return quadrics;
}

/// All g in gl(V) with g x_i inside the sampled cone tangent space at every
/// sample.  This is a linear-constraint kernel, hence an overestimate of
/// the true stabilizer algebra that shrinks as samples are added.
struct StabilizerAlgebra {
  std::vector<RatMatrix> basis;
  Index dim() const { return static_cast<Index>(basis.size()); }

  bool contains(const RatMatrix& g) const {
    if (basis.empty()) return g.isZero(0);
    RowSpan span(g.rows() * g.cols());
    for (const auto& b : basis) span.insert(flatten_row_major(b));
    return span.contains(flatten_row_major(g));
  }
};

inline StabilizerAlgebra stabilizer_algebra(const ParamVariety& x, Index samples,
                                            std::uint64_t seed) {
  const Index dim = x.ambient().dim();
  if (samples < dim) throw InvalidRange("stabilizer needs at least dim(V) samples");
  std::vector<RatMatrix> blocks(static_cast<size_t>(samples));
  parallel_for_index(static_cast<size_t>(samples), [&](size_t i) {
    RatVector t = sample_params(x, seed, i);
    RatVector p = x.eval(t);
    Subspace tangent = cone_tangent_space(x, t);
    // complement of the tangent space under the standard dot product
    RatMatrix complement = mat_kernel(RatMatrix(tangent.basis().transpose()));
    // constraint rows: c^T g p = 0, coefficient of g_{ab} is c_a p_b
    RatMatrix rows(complement.cols(), dim * dim);
    for (Index cidx = 0; cidx < complement.cols(); ++cidx) {
      Index k = 0;
      for (Index a = 0; a < dim; ++a)
        for (Index b = 0; b < dim; ++b) rows(cidx, k++) = complement(a, cidx) * p(b);
    }
    blocks[i] = std::move(rows);
  });
  Index total_rows = 0;
  for (const auto& block : blocks) total_rows += block.rows();
  RatMatrix constraints(total_rows, dim * dim);
  Index at = 0;
  for (const auto& block : blocks) {
    constraints.middleRows(at, block.rows()) = block;
    at += block.rows();
  }
  RatMatrix kernel = mat_kernel_fast(constraints);
  StabilizerAlgebra out;
  out.basis.reserve(static_cast<size_t>(kernel.cols()));
  for (Index c = 0; c < kernel.cols(); ++c)
    out.basis.push_back(unflatten_row_major(kernel.col(c), dim, dim));
  return out;
}

/// Rank of the matrix of sampled points; the variety spans the ambient
/// space iff this equals dim(V).
inline Index nondegeneracy_rank(const ParamVariety& x, Index samples,
                                std::uint64_t seed) {
  const Index dim = x.ambient().dim();
  RatMatrix points(dim, samples);
  std::vector<RatVector> cols(static_cast<size_t>(samples));
  parallel_for_index(static_cast<size_t>(samples),
                     [&](size_t i) { cols[i] = sample_point(x, seed, i); });
  for (Index i = 0; i < samples; ++i) points.col(i) = cols[static_cast<size_t>(i)];
  return rank(points);
}

struct SecantProbeReport {
  Index trials = 0;
  Index failures = 0;  // pairs whose secant line passes through h
  Index skipped = 0;   // trials where no usable root was found
};

namespace detail {
/// Sample a point of the cone constrained to omega(h, x) = 0, numerically:
/// fix all parameters but one, solve the univariate condition.
inline std::optional<Eigen::VectorXd> constrained_sample(
    const ParamVariety& x, const RatVector& h, std::uint64_t seed,
    std::uint64_t index, double root_residual) {
  const int k = x.params();
  const RatRowVector eta = (h.transpose() * x.ambient().J());
  for (std::uint64_t attempt = 0; attempt < 24; ++attempt) {
    const int free = static_cast<int>((index + attempt) % static_cast<std::uint64_t>(k));
    RatVector fixed(k);
    for (int j = 0; j < k; ++j)
      fixed(j) = small_rational(seed, index, 100 + static_cast<std::uint64_t>(j), attempt);
    // eta . x(t) as a univariate Laurent polynomial in the free parameter
    LaurentPoly condition(k);
    for (Index c = 0; c < x.ambient().dim(); ++c) {
      if (eta(c) == 0) continue;
      LaurentPoly comp = x.map()[static_cast<size_t>(c)];
      for (int j = 0; j < k; ++j)
        if (j != free) comp = comp.substitute_value(j, fixed(j));
      condition += eta(c) * comp;
    }
    Eigen::VectorXd t(k);
    for (int j = 0; j < k; ++j) t(j) = to_double(fixed(j));
    if (condition.is_zero()) {
      // the constraint holds identically on this slice
      Eigen::VectorXd p = x.eval_double(t);
      if (p.norm() > 0) return p;
      continue;
    }
    auto uni = as_univariate(condition, free);
    std::vector<double> roots = laurent_real_roots(uni);
    if (roots.empty()) continue;
    const double s = roots[mix_counters(seed, index, 777, attempt) % roots.size()];
    t(free) = s;
    // residual gate
    double val = 0, scale = 0;
    for (const auto& [e, c] : uni) {
      const double term = to_double(c) * std::pow(s, static_cast<double>(e));
      val += term;
      scale += std::abs(term);
    }
    if (scale > 0 && std::abs(val) > root_residual * scale) continue;
    Eigen::VectorXd p = x.eval_double(t);
    if (!p.allFinite() || p.norm() == 0) continue;
    return p;
  }
  return std::nullopt;
}
}  // namespace detail

/// Sample pairs of points on X cut by the hyperplane omega(h, .) = 0 and
/// count the pairs whose secant line contains h.
inline SecantProbeReport secant_probe(const ParamVariety& x, const RatVector& h,
                                      Index trials, std::uint64_t seed,
                                      double rank_tol = 1e-8,
                                      double root_residual = 1e-9) {
  if (h.isZero(0)) throw InvalidRange("secant probe needs a nonzero h");
  SecantProbeReport report;
  report.trials = trials;
  const Eigen::VectorXd hd = to_double(h);
  std::vector<int> outcome(static_cast<size_t>(trials), 0);  // 0 skip, 1 ok, 2 fail
  parallel_for_index(static_cast<size_t>(trials), [&](size_t i) {
    auto p1 = detail::constrained_sample(x, h, seed, 2 * i, root_residual);
    auto p2 = detail::constrained_sample(x, h, seed, 2 * i + 1, root_residual);
    if (!p1 || !p2) return;
    Eigen::MatrixXd m(3, hd.size());
    m.row(0) = p1->normalized();
    m.row(1) = p2->normalized();
    m.row(2) = hd.normalized();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    const bool on_secant = sv(2) <= rank_tol * sv(0);
    outcome[i] = on_secant ? 2 : 1;
  });
  for (int o : outcome) {
    if (o == 0) report.skipped++;
    if (o == 2) report.failures++;
  }
  return report;
}

}  // namespace legkit
