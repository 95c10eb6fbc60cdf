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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "legkit/laurent.hpp"

namespace legkit {

/// View a Laurent polynomial as univariate in variable `free`, all other
/// variables already substituted away.  Keys are exponents of the free
/// variable (possibly negative).
inline std::map<long, Rational> as_univariate(const LaurentPoly& p, int free) {
  std::map<long, Rational> out;
  for (const auto& [e, c] : p.terms()) {
    for (size_t k = 0; k < e.size(); ++k)
      if (static_cast<int>(k) != free && e[k] != 0)
        throw Error("polynomial is not univariate after substitution");
    out[e[static_cast<size_t>(free)]] += c;
    if (out[e[static_cast<size_t>(free)]] == 0) out.erase(e[static_cast<size_t>(free)]);
  }
  return out;
}

/// Real roots of sum coeffs[k] s^k (ascending), via the companion matrix,
/// polished with a few Newton steps.  Zero roots are dropped (the callers
/// need nonzero parameter values).
inline std::vector<double> real_roots(std::vector<double> coeffs,
                                      double imag_tol = 1e-7) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  // factor out s^v
  size_t low = 0;
  while (low < coeffs.size() && coeffs[low] == 0.0) ++low;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(low));
  if (coeffs.size() <= 1) return {};
  const size_t deg = coeffs.size() - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Index>(deg),
                                                    static_cast<Index>(deg));
  for (size_t i = 0; i + 1 < deg; ++i) companion(static_cast<Index>(i + 1), static_cast<Index>(i)) = 1.0;
  for (size_t i = 0; i < deg; ++i)
    companion(static_cast<Index>(i), static_cast<Index>(deg - 1)) =
        -coeffs[i] / coeffs[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  auto horner = [&](double s) {
    double v = 0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * s + coeffs[k];
    return v;
  };
  auto horner_d = [&](double s) {
    double v = 0;
    for (size_t k = coeffs.size(); k-- > 1;) v = v * s + coeffs[k] * static_cast<double>(k);
    return v;
  };
  std::vector<double> roots;
  for (Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const auto z = solver.eigenvalues()(i);
    if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z.real()))) continue;
    double s = z.real();
    for (int it = 0; it < 4; ++it) {
      const double d = horner_d(s);
      if (d == 0.0) break;
      s -= horner(s) / d;
    }
    if (std::abs(s) < 1e-12) continue;
    roots.push_back(s);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-10 * (1 + std::abs(a)); }),
              roots.end());
  return roots;
}

/// Real roots of a univariate Laurent polynomial (monomial factor removed).
inline std::vector<double> laurent_real_roots(const std::map<long, Rational>& uni) {
  if (uni.empty()) return {};
  const long lowest = uni.begin()->first;
  const long highest = uni.rbegin()->first;
  std::vector<double> coeffs(static_cast<size_t>(highest - lowest) + 1, 0.0);
  for (const auto& [e, c] : uni) coeffs[static_cast<size_t>(e - lowest)] = to_double(c);
  return real_roots(std::move(coeffs));
}

}  // namespace legkit
