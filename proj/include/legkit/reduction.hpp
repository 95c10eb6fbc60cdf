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

#include "legkit/rootfind.hpp"
#include "legkit/variety.hpp"

namespace legkit {

/// A hyperplane H = ker(eta) in a symplectic space, with the
/// distinguished line h = H^perp determined by omega(h, .) = eta.
struct HyperplaneSpec {
  SymplecticSpace space;
  RatVector eta;  // covector coefficients
  RatVector h;

  HyperplaneSpec(SymplecticSpace s, RatVector eta_coeffs)
      : space(std::move(s)), eta(std::move(eta_coeffs)), h(space.dim()) {
    if (eta.size() != space.dim()) throw SizeMismatch("covector size");
    if (eta.isZero(0)) throw InvalidRange("hyperplane covector must be nonzero");
    // solve J^T h = eta, i.e. omega(h, v) = eta(v) for all v
    h = inverse(RatMatrix(space.J().transpose())) * eta;
  }

  Rational eval(const RatVector& v) const { return (eta.transpose() * v)(0, 0); }

  /// Basis of H as a subspace.
  Subspace subspace() const {
    return Subspace(space, mat_kernel(RatMatrix(eta.transpose())));
  }
};

struct FloatTolerance {
  double residual_bound = 1e-8;
  double root_residual = 1e-12;
};

struct ReduceTrial {
  bool solved = false;
  double root_residual = 0.0;
  Index reduced_dim = 0;
  double omega_residual = 0.0;
  Eigen::VectorXd reduced_point;
};

struct HyperplaneReduceReport {
  Index samples = 0;
  Index solved = 0;
  Index skipped = 0;
  Index expected_dim = 0;
  std::vector<ReduceTrial> trials;
  bool pass = false;
  std::string failure;
};

namespace detail {

/// Exact reduction data of the hyperplane: quotient form and projection.
struct HyperplaneReduction {
  RatMatrix projection;   // (2n-2) x 2n, valid on vectors of H
  RatMatrix quotient_J;   // (2n-2) x (2n-2)
};

inline HyperplaneReduction hyperplane_reduction(const HyperplaneSpec& hs) {
  ReductionResult red = symplectic_reduce(hs.subspace());
  if (!red.quotient || red.quotient_dim != hs.space.dim() - 2)
    throw Error("hyperplane reduction has unexpected dimension");
  return {red.projection, red.quotient->J()};
}

/// Numeric orthonormal basis of the column span, rank decided at tol.
inline Eigen::MatrixXd span_basis_numeric(const Eigen::MatrixXd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace detail

/// Sample X cap H by fixing all parameters but one and solving the single
/// Laurent condition eta(x(t)) = 0 numerically; push every solution through
/// the exact symplectic reduction of H and measure how far the reduced
/// tangent spaces are from Lagrangian.
inline HyperplaneReduceReport hyperplane_reduce(const ParamVariety& x,
                                                const HyperplaneSpec& hs,
                                                Index samples, std::uint64_t seed,
                                                FloatTolerance tol = {}) {
  if (!(hs.space == x.ambient())) throw SizeMismatch("hyperplane lives elsewhere");
  // preconditions: X certifies Legendrian, and eta is not identically zero on X
  VarietyReport pre = legendrian_check(x, 5, seed + 17);
  if (!pre.pass()) throw Error("input variety fails the Lagrangian certification");
  {
    bool eta_alive = false;
    for (Index i = 0; i < 5 && !eta_alive; ++i)
      eta_alive = hs.eval(sample_point(x, seed + 23, i)) != 0;
    if (!eta_alive) throw DegenerateSection("covector vanishes on all samples");
  }

  detail::HyperplaneReduction red = detail::hyperplane_reduction(hs);
  const Eigen::MatrixXd proj = to_double(red.projection);
  const Eigen::MatrixXd jq = to_double(red.quotient_J);
  const Index n = x.ambient().half_dim();
  const int k = x.params();

  HyperplaneReduceReport report;
  report.samples = samples;
  report.expected_dim = n - 1;
  report.trials.assign(static_cast<size_t>(samples), {});

  parallel_for_index(static_cast<size_t>(samples), [&](size_t trial) {
    ReduceTrial& out = report.trials[trial];
    for (std::uint64_t attempt = 0; attempt < 24 && !out.solved; ++attempt) {
      const int free = static_cast<int>((trial + attempt) % static_cast<std::uint64_t>(k));
      RatVector fixed(k);
      for (int j = 0; j < k; ++j)
        fixed(j) = small_rational(seed, trial, 300 + static_cast<std::uint64_t>(j), attempt);
      LaurentPoly condition(k);
      for (Index c = 0; c < x.ambient().dim(); ++c) {
        if (hs.eta(c) == 0) continue;
        LaurentPoly comp = x.map()[static_cast<size_t>(c)];
        for (int j = 0; j < k; ++j)
          if (j != free) comp = comp.substitute_value(j, fixed(j));
        condition += hs.eta(c) * comp;
      }
      if (condition.is_zero()) continue;  // the slice sits inside H: not transverse
      auto uni = as_univariate(condition, free);
      std::vector<double> roots = laurent_real_roots(uni);
      if (roots.empty()) continue;
      const double s = roots[mix_counters(seed, trial, 901, attempt) % roots.size()];
      double val = 0, scale = 0;
      for (const auto& [e, c] : uni) {
        const double term = to_double(c) * std::pow(s, static_cast<double>(e));
        val += term;
        scale += std::abs(term);
      }
      if (scale == 0 || std::abs(val) > tol.root_residual * scale * 1e4) continue;

      Eigen::VectorXd t(k);
      for (int j = 0; j < k; ++j) t(j) = to_double(fixed(j));
      t(free) = s;
      Eigen::VectorXd p = x.eval_double(t);
      if (!p.allFinite() || p.norm() == 0) continue;

      // cone tangent: point plus Jacobian columns
      Eigen::MatrixXd tan(p.size(), k + 1);
      tan.col(0) = p;
      for (int j = 0; j < k; ++j) {
        for (Index c = 0; c < x.ambient().dim(); ++c)
          tan(c, j + 1) =
              x.map()[static_cast<size_t>(c)].derivative(j).eval_double(t);
      }
      Eigen::MatrixXd q = detail::span_basis_numeric(tan, 1e-9);
      // intersect with H: kernel of eta restricted to the span
      Eigen::VectorXd eta_d = to_double(hs.eta);
      Eigen::RowVectorXd eta_on_span = eta_d.transpose() * q;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(eta_on_span, Eigen::ComputeFullV);
      Index null_dim = q.cols();
      if (eta_on_span.norm() > 1e-9 * (1 + q.colwise().norm().maxCoeff()))
        null_dim -= 1;
      Eigen::MatrixXd combo = svd.matrixV().rightCols(null_dim);
      Eigen::MatrixXd tan_in_h = q * combo;

      Eigen::MatrixXd reduced = proj * tan_in_h;
      Eigen::MatrixXd rbasis = detail::span_basis_numeric(reduced, 1e-8);
      out.reduced_dim = rbasis.cols();
      double max_resid = 0;
      for (Index a = 0; a < rbasis.cols(); ++a)
        for (Index b = 0; b < rbasis.cols(); ++b)
          max_resid = std::max(max_resid,
                               std::abs(rbasis.col(a).dot(jq * rbasis.col(b))));
      out.omega_residual = max_resid;
      out.root_residual = scale == 0 ? 0 : std::abs(val) / scale;
      out.reduced_point = (proj * p).normalized();
      out.solved = true;
    }
  });

  report.pass = true;
  for (const auto& trial : report.trials) {
    if (!trial.solved) {
      report.skipped++;
      continue;
    }
    report.solved++;
    if (trial.reduced_dim != report.expected_dim) {
      report.pass = false;
      report.failure = "reduced tangent dimension " + std::to_string(trial.reduced_dim);
    }
    if (trial.omega_residual >= tol.residual_bound) {
      report.pass = false;
      report.failure = "omega residual " + std::to_string(trial.omega_residual);
    }
  }
  if (report.solved == 0) throw DegenerateSection();
  return report;
}

struct ExactReducePoint {
  RatVector reduced_point;
  RatMatrix reduced_tangent;  // basis columns in the quotient
  RatMatrix gram;             // omega' values on the basis: must vanish
  Index reduced_dim = 0;
};

/// Fully exact path for fixtures with a rational section point: parameter
/// values t with eta(x(t)) = 0 exactly.  Every stage stays in Q and the
/// reduced form must vanish identically on the reduced tangent space.
inline ExactReducePoint hyperplane_reduce_exact_at(const ParamVariety& x,
                                                   const HyperplaneSpec& hs,
                                                   const RatVector& t) {
  RatVector p = x.eval(t);
  if (hs.eval(p) != 0) throw CenterNotOnVariety("point is not on the hyperplane");
  detail::HyperplaneReduction red = detail::hyperplane_reduction(hs);
  Subspace tangent = cone_tangent_space(x, t);
  // intersect the tangent space with H exactly
  RatRowVector eta_on_basis = hs.eta.transpose() * tangent.basis();
  RatMatrix combo = mat_kernel(RatMatrix(eta_on_basis));
  RatMatrix tan_in_h = column_space_basis(RatMatrix(tangent.basis() * combo));
  RatMatrix reduced = column_space_basis(RatMatrix(red.projection * tan_in_h));
  ExactReducePoint out{red.projection * p, reduced,
                       RatMatrix(reduced.transpose() * red.quotient_J * reduced),
                       reduced.cols()};
  return out;
}

/// The affine-chart projection used to compare the reduction with the
/// classical conormal-chart map: on the chart x_0 = y^n = 1 of
/// P(W + W*), project to [y^1, ..., y^{n-1}, y^0 - x_n, x_1, ..., x_{n-1}, 1].
struct PhiCertificate {
  Index n;
  RatMatrix Q;                // 2n x (2n+2)
  Rational conformal_factor;  // omega_std(Qu, Qv) = c omega(u, v) on H
  bool kills_h = false;
  bool full_rank_on_h = false;
  bool conformal_on_h = false;
  bool chart_formula_matches = false;
  bool pass() const {
    return kills_h && full_rank_on_h && conformal_on_h && chart_formula_matches;
  }
};

/// Build the projection for H = { x_0 - y^n = 0 } in coordinates
/// (x_0..x_n, y^0..y^n) and certify, exactly, that it realizes the
/// symplectic reduction of H composed with a chart choice.
inline PhiCertificate phi_map(Index n) {
  if (n < 2) throw InvalidRange("phi map needs n >= 2");
  const Index big = 2 * n + 2;  // dim W + W*
  const Index x0 = 0;
  auto xi = [&](Index i) { return i; };          // x_i at slot i (i = 0..n)
  auto yi = [&](Index i) { return n + 1 + i; };  // y^i at slot n+1+i

  PhiCertificate cert;
  cert.n = n;
  RatMatrix q = rat_zero(2 * n, big);
  for (Index i = 1; i <= n - 1; ++i) q(i - 1, yi(i)) = 1;  // y^1..y^{n-1}
  q(n - 1, yi(0)) = 1;                                     // y^0 - x_n
  q(n - 1, xi(n)) = -1;
  for (Index i = 1; i <= n - 1; ++i) q(n - 1 + i, xi(i)) = 1;  // x_1..x_{n-1}
  q(2 * n - 1, x0) = 1;                                        // chart slot
  cert.Q = q;

  const SymplecticSpace big_space = SymplecticSpace::standard(n + 1);
  RatVector eta = RatVector::Zero(big);
  eta(x0) = 1;
  eta(yi(n)) = -1;
  HyperplaneSpec hs(big_space, eta);

  cert.kills_h = (q * hs.h).isZero(0);

  const RatMatrix h_basis = hs.subspace().basis();
  cert.full_rank_on_h = rank(RatMatrix(q * h_basis)) == 2 * n;

  const SymplecticSpace small_space = SymplecticSpace::standard(n);
  const RatMatrix lhs =
      h_basis.transpose() * q.transpose() * small_space.J() * q * h_basis;
  const RatMatrix rhs = h_basis.transpose() * big_space.J() * h_basis;
  cert.conformal_factor = Rational(-1);
  cert.conformal_on_h = lhs == cert.conformal_factor * rhs;

  // symbolic chart agreement: compose Q with the chart embedding
  {
    const int vars = static_cast<int>(2 * n);  // x_1..x_n, y^0..y^{n-1}
    auto X = [&](Index i) { return LaurentPoly::variable(vars, static_cast<int>(i - 1)); };
    auto Y = [&](Index i) { return LaurentPoly::variable(vars, static_cast<int>(n + i)); };
    std::vector<LaurentPoly> chart;
    chart.push_back(LaurentPoly::constant(vars, Rational(1)));  // x_0 = 1
    for (Index i = 1; i <= n; ++i) chart.push_back(X(i));
    for (Index i = 0; i <= n - 1; ++i) chart.push_back(Y(i));
    chart.push_back(LaurentPoly::constant(vars, Rational(1)));  // y^n = 1
    std::vector<LaurentPoly> image(static_cast<size_t>(2 * n), LaurentPoly(vars));
    for (Index r = 0; r < 2 * n; ++r)
      for (Index c = 0; c < big; ++c)
        if (q(r, c) != 0) image[static_cast<size_t>(r)] += q(r, c) * chart[static_cast<size_t>(c)];
    bool match = true;
    for (Index i = 1; i <= n - 1; ++i) match = match && image[static_cast<size_t>(i - 1)] == Y(i);
    match = match && image[static_cast<size_t>(n - 1)] == Y(0) - X(n);
    for (Index i = 1; i <= n - 1; ++i)
      match = match && image[static_cast<size_t>(n - 1 + i)] == X(i);
    match = match && image[static_cast<size_t>(2 * n - 1)] ==
                         LaurentPoly::constant(vars, Rational(1));
    cert.chart_formula_matches = match;
  }
  return cert;
}

/// Join of two parametrized cones: the direct sum ambient with
/// block-diagonal form, map (x1(t), lambda * x2(u)) with a fresh scale
/// parameter.
inline ParamVariety join_legendrian(const ParamVariety& x1, const ParamVariety& x2) {
  const Index d1 = x1.ambient().dim(), d2 = x2.ambient().dim();
  RatMatrix j = rat_zero(d1 + d2, d1 + d2);
  j.topLeftCorner(d1, d1) = x1.ambient().J();
  j.bottomRightCorner(d2, d2) = x2.ambient().J();
  SymplecticSpace ambient(d1 + d2, std::move(j));
  const int k1 = x1.params(), k2 = x2.params();
  const int vars = k1 + k2 + 1;
  const int lambda = k1 + k2;
  LaurentMap map;
  map.reserve(static_cast<size_t>(d1 + d2));
  for (const auto& f : x1.map()) map.push_back(f.remapped(vars, 0));
  const LaurentPoly scale = LaurentPoly::variable(vars, lambda);
  for (const auto& f : x2.map()) map.push_back(f.remapped(vars, k1) * scale);
  return ParamVariety(std::move(ambient), vars, std::move(map),
                      "join(" + x1.label() + "," + x2.label() + ")");
}

/// Conormal extension of a hypersurface cone {f = 0} in W: the image of
/// (t, s) -> (z(t), s grad f(z(t))) inside W + W*, which lies on the
/// incidence quadric sum_i x_i y_i = 0 by the Euler identity.
inline ParamVariety conormal_extend(const LaurentPoly& f, const LaurentMap& zhat,
                                    const std::string& label) {
  if (zhat.empty()) throw NoParametrization();
  const int nw = f.nvars();
  if (static_cast<int>(zhat.size()) != nw)
    throw SizeMismatch("parametrization component count");
  if (f.is_zero() || f.has_negative_exponent() || !f.is_homogeneous() ||
      f.highest_degree() < 1)
    throw InvalidRange("need a homogeneous nonconstant polynomial");
  const int j = zhat[0].nvars();
  for (const auto& z : zhat)
    if (z.nvars() != j) throw SizeMismatch("parametrization variable counts");
  if (!f.compose(zhat).is_zero())
    throw InvalidRange("parametrization does not satisfy the hypersurface equation");

  const int vars = j + 1;  // t parameters plus the conormal scale s
  const LaurentPoly s = LaurentPoly::variable(vars, j);
  LaurentMap map;
  map.reserve(2 * static_cast<size_t>(nw));
  std::vector<LaurentPoly> z_ext;
  z_ext.reserve(static_cast<size_t>(nw));
  for (const auto& z : zhat) z_ext.push_back(z.remapped(vars, 0));
  for (const auto& z : z_ext) map.push_back(z);
  for (int i = 0; i < nw; ++i) {
    LaurentPoly grad_i = f.derivative(i);
    std::vector<LaurentPoly> args = z_ext;
    map.push_back(s * grad_i.compose(args));
  }
  // the incidence quadric holds identically
  LaurentPoly incidence(vars);
  for (int i = 0; i < nw; ++i)
    incidence += map[static_cast<size_t>(i)] * map[static_cast<size_t>(nw + i)];
  if (!incidence.is_zero())
    throw Error("conormal image leaves the incidence quadric");
  return ParamVariety(SymplecticSpace::standard(nw), vars, std::move(map), label);
}

/// The incidence quadric x_0 y_0 + ... + x_{n-1} y_{n-1} on the standard
/// space, as a quadratic form.
inline QuadraticForm incidence_quadric(Index n) {
  SymplecticSpace space = SymplecticSpace::standard(n);
  RatMatrix m = rat_zero(2 * n, 2 * n);
  for (Index i = 0; i < n; ++i) {
    m(i, n + i) = ratio(1, 2);
    m(n + i, i) = ratio(1, 2);
  }
  return QuadraticForm(std::move(space), std::move(m));
}

}  // namespace legkit
