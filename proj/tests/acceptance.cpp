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

// End-to-end acceptance suite: one line per criterion, every tolerance
// pinned in code.  Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <legkit/catalog.hpp>
#include <legkit/poisson.hpp>
#include <legkit/reduction.hpp>
#include <legkit/rng.hpp>
#include <legkit/toric.hpp>

using namespace legkit;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" (") + e.what() + ")";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %2d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), secs, note.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool tuples_equal(const std::vector<std::vector<long>>& got,
                  const std::vector<std::vector<long>>& want) {
  return got == want;
}

RatMatrix random_square(Index n, std::uint64_t seed) {
  RatMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = small_rational(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  return m;
}

}  // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();

  criterion(1, "toric classification matches the smooth lists", [] {
    bool ok = tuples_equal(classify_smooth_candidates(2, 12), {{2, 1, 1}, {1, 1, 1}});
    ok = ok && tuples_equal(classify_smooth_candidates(3, 8), {{1, 1, 1, 1}});
    ok = ok && classify_smooth_candidates(4, 6).empty();
    return ok;
  });

  criterion(2, "exact Lagrangian certification across the catalog", [] {
    bool ok = true;
    for (const auto& entry : catalog()) {
      VarietyReport report = legendrian_check(entry.builder(), 10, 0);
      const bool expected = entry.name != "rnc-control";
      if (report.pass() != expected) {
        std::printf("        unexpected verdict for %s\n", entry.name.c_str());
        ok = false;
      }
    }
    return ok;
  });

  criterion(3, "quadric ideal and stabilizer dimensions", [] {
    ParamVariety xinv3 = build_xinv_variety(3);
    const Index dim = xinv3.ambient().dim();  // 18
    auto quadrics = interpolate_quadrics(xinv3, dim * (dim + 1), 1);
    bool ok = quadrics.size() == 16;
    // the interpolated space equals the explicit span of the Y quadrics
    RowSpan explicit_span(dim * (dim + 1) / 2);
    for (const auto& q : y_quadrics(3))
      explicit_span.insert(quadric_coefficients(q, dim));
    ok = ok && explicit_span.rank() == 16;
    for (const auto& q : quadrics)
      ok = ok && explicit_span.contains(quadric_coefficients(quadric_from_matrix(q.M), dim));
    // rho images form a Lie algebra
    std::vector<RatMatrix> images;
    for (const auto& q : quadrics) images.push_back(rho(q));
    ok = ok && is_bracket_closed(images).closed;
    for (const auto& g : images) ok = ok && in_sp(g, xinv3.ambient());
    // sampled stabilizer: rho(I2) plus the scalars
    StabilizerAlgebra stab = stabilizer_algebra(xinv3, 40, 2);
    ok = ok && stab.dim() == 17;
    ok = ok && stab.contains(rat_identity(dim));
    for (const auto& g : images) ok = ok && stab.contains(g);
    ok = ok && is_bracket_closed(stab.basis).closed;
    // sp/wsp split of every basis element stays inside
    for (const auto& g : stab.basis) {
      auto split = sp_wsp_split(g, xinv3.ambient());
      ok = ok && stab.contains(split.g_plus) && stab.contains(split.g_minus);
    }
    // the Lagrangian plane control values
    ParamVariety plane = build_catalog("lagrangian-plane");
    ok = ok && interpolate_quadrics(plane, 20, 0).size() == 7;
    ok = ok && stabilizer_algebra(plane, 8, 0).dim() == 12;
    return ok;
  });

  criterion(4, "complementary minor identities on random data", [] {
    int checked = 0;
    for (std::uint64_t trial = 0; checked < 100; ++trial) {
      const int m = 2 + static_cast<int>(trial % 4);  // sizes 2..5
      RatMatrix g = random_unimodular(m, 1000 + trial, trial);
      const int k = static_cast<int>(small_int(2000, trial, 0, 0, m));
      std::vector<int> I, J;
      for (int i = 0; i < m && static_cast<int>(I.size()) < k; ++i)
        if (small_int(2001, trial, static_cast<std::uint64_t>(i), 0, 1) || m - i == k - static_cast<int>(I.size()))
          I.push_back(i);
      while (static_cast<int>(I.size()) < k) I.push_back(static_cast<int>(I.size()));
      for (int i = 0; i < m && static_cast<int>(J.size()) < k; ++i)
        if (small_int(2002, trial, static_cast<std::uint64_t>(i), 0, 1) || m - i == k - static_cast<int>(J.size()))
          J.push_back(i);
      while (static_cast<int>(J.size()) < k) J.push_back(static_cast<int>(J.size()));
      std::sort(I.begin(), I.end());
      I.erase(std::unique(I.begin(), I.end()), I.end());
      std::sort(J.begin(), J.end());
      J.erase(std::unique(J.begin(), J.end()), J.end());
      if (I.size() != J.size()) continue;
      if (!minor_identity_check(g, I, J)) return false;
      ++checked;
    }
    return true;
  });

  criterion(5, "spinor-chart quadrics vanish on 25 random trials", [] {
    S6Report numeric = s6_identity_check(25, 7);
    S6Report symbolic = s6_identity_check(1, 0, true);
    return numeric.pass && numeric.trials == 25 && symbolic.pass;
  });

  criterion(6, "tangent-cone smoothness signals match the classification", [] {
    bool ok = true;
    for (int m = 2; m <= 4; ++m) {
      for (int k = 0; k <= m; ++k) {
        const bool expected = k == 0 || k == m || (m == 2 && k == 1);
        if (xdeg_smooth_signal(m, k) != expected) {
          std::printf("        signal mismatch at m=%d k=%d\n", m, k);
          ok = false;
        }
      }
    }
    return ok;
  });

  criterion(7, "sp/wsp decomposition identities on 200 random matrices", [] {
    for (Index size : {6, 8}) {
      SymplecticSpace s = SymplecticSpace::standard(size / 2);
      for (std::uint64_t i = 0; i < 100; ++i) {
        RatMatrix g = random_square(size, 10 * size + i);
        auto split = sp_wsp_split(g, s);
        if (RatMatrix(split.g_plus + split.g_minus) != g) return false;
        if (!in_sp(split.g_plus, s) || !in_wsp(split.g_minus, s)) return false;
        // J g characterizations
        RatMatrix jp = s.J() * split.g_plus;
        RatMatrix jm = s.J() * split.g_minus;
        if (RatMatrix(jp.transpose()) != jp) return false;
        if (RatMatrix(jm.transpose()) != RatMatrix(-jm)) return false;
        // closed form in the symplectic basis
        if (split.g_plus != RatMatrix((g + s.J() * g.transpose() * s.J()) / Rational(2)))
          return false;
      }
    }
    return true;
  });

  criterion(8, "edge-lemma predicates agree with brute-force hulls", [] {
    int tuples = 0;
    for (std::uint64_t seed = 0; tuples < 200; ++seed) {
      const int n = 3 + static_cast<int>(seed % 3);  // lattice dims 2..4
      std::vector<long> a(static_cast<size_t>(n));
      a[0] = small_int(seed, 1, 0, 1, 9);
      for (int i = 1; i < n; ++i)
        a[static_cast<size_t>(i)] = small_int(seed, 1, static_cast<std::uint64_t>(i), 1, a[static_cast<size_t>(i - 1)]);
      long g = 0;
      for (long v : a) g = std::gcd(g, v);
      if (g != 1) continue;
      ++tuples;
      LatticePolytope hull = hull_edges(WeightSystem(a));
      const long a0 = a[0];
      const int d = n - 1;
      for (int k = 1; k <= d; ++k)
        for (int l = 1; l <= d; ++l)
          if (k != l && !hull.has_edge(k, n + l)) return false;
      for (unsigned mask = 0; mask < (1u << d); ++mask) {
        long sum = 0;
        std::vector<int> I, J;
        for (int i = 1; i <= d; ++i) {
          if (mask & (1u << (i - 1))) {
            sum += a[static_cast<size_t>(i)];
            I.push_back(i);
          } else {
            sum -= a[static_cast<size_t>(i)];
            J.push_back(i);
          }
        }
        if (std::abs(sum) < a0) {
          for (size_t s = 0; s < I.size(); ++s)
            for (size_t t = s + 1; t < I.size(); ++t)
              if (!hull.has_edge(I[s], I[t])) return false;
        }
        if (sum > a0) {
          for (int k : I)
            if (!hull.has_edge(0, k)) return false;
          for (int l : J)
            if (!hull.has_edge(0, n + l)) return false;
        }
      }
    }
    return true;
  });

  criterion(9, "hyperplane reduction pipeline and chart certificate", [] {
    bool ok = true;
    for (const char* name : {"toric-1,1,1", "xinv-3"}) {
      ParamVariety x = build_catalog(name);
      const Index dim = x.ambient().dim();
      for (std::uint64_t h = 0; h < 3; ++h) {
        RatVector eta(dim);
        for (Index i = 0; i < dim; ++i)
          eta(i) = small_rational(555 + h, static_cast<std::uint64_t>(i), 3);
        HyperplaneSpec hs(x.ambient(), eta);
        FloatTolerance tol;  // residual bound 1e-8
        HyperplaneReduceReport report = hyperplane_reduce(x, hs, 3, 100 + h, tol);
        if (!report.pass || report.solved == 0) {
          std::printf("        reduction failed for %s hyperplane %llu (%s)\n", name,
                      static_cast<unsigned long long>(h), report.failure.c_str());
          ok = false;
        }
      }
    }
    ok = ok && phi_map(2).pass() && phi_map(3).pass() && phi_map(4).pass();
    return ok;
  });

  criterion(10, "Poisson closure of the quadric span", [] {
    for (int m : {2, 3})
      if (!is_poisson_closed_mod_span(y_quadrics(m), m * m).closed) return false;
    return true;
  });

  criterion(11, "conormal extension lands in the incidence quadric", [] {
    const auto conic = LaurentPoly::monomial(3, {1, 0, 1}, Rational(1)) -
                       LaurentPoly::monomial(3, {0, 2, 0}, Rational(1));
    LaurentMap zhat = {LaurentPoly::constant(1, Rational(1)),
                       LaurentPoly::variable(1, 0),
                       LaurentPoly::monomial(1, {2}, Rational(1))};
    // the constructor verifies sum x_i y_i = 0 symbolically
    ParamVariety x = conormal_extend(conic, zhat, "conic-conormal");
    if (!legendrian_check(x, 10, 0).pass()) return false;
    QuadraticForm qw = incidence_quadric(3);
    for (std::uint64_t i = 0; i < 10; ++i)
      if (qw.value(sample_point(x, 1, i)) != 0) return false;
    return true;
  });

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
  std::printf("%d/11 criteria passed (%.1fs total)\n", 11 - failures, total);
  return failures == 0 ? 0 : 1;
}
