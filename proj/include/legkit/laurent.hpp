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

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "legkit/matrix.hpp"
#include "legkit/rational.hpp"

namespace legkit {

/// Sparse multivariate Laurent polynomial over the rationals.
/// Terms map integer exponent vectors (entries may be negative) to nonzero
/// coefficients; zero coefficients are never stored.
class LaurentPoly {
 public:
  using Exponent = std::vector<long>;
  using TermMap = std::map<Exponent, Rational>;

  LaurentPoly() : nvars_(0) {}
  explicit LaurentPoly(int nvars) : nvars_(nvars) {}

  static LaurentPoly constant(int nvars, const Rational& c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_[Exponent(static_cast<size_t>(nvars), 0)] = c;
    return p;
  }

  static LaurentPoly monomial(int nvars, Exponent e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars)
      throw SizeMismatch("monomial exponent length != nvars");
    LaurentPoly p(nvars);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  /// The coordinate function t_j.
  static LaurentPoly variable(int nvars, int j) {
    Exponent e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(j)] = 1;
    return monomial(nvars, std::move(e), Rational(1));
  }

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  bool operator==(const LaurentPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  LaurentPoly operator-() const {
    LaurentPoly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_vars(b);
    LaurentPoly p(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        p.add_term(e, ca * cb);
      }
    }
    return p;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) {
    a *= c;
    return a;
  }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) {
    a *= c;
    return a;
  }

  /// Exact division by a single-term polynomial.
  LaurentPoly divide_by_monomial(const LaurentPoly& m) const {
    check_vars(m);
    if (m.terms_.size() != 1) throw Error("divisor is not a monomial");
    const auto& [me, mc] = *m.terms_.begin();
    LaurentPoly p(nvars_);
    const Rational inv = Rational(1) / mc;
    for (const auto& [e, c] : terms_) {
      Exponent q(e.size());
      for (size_t i = 0; i < e.size(); ++i) q[i] = e[i] - me[i];
      p.terms_[std::move(q)] = c * inv;
    }
    return p;
  }

  /// d/dt_j, term by term: d(t^w)/dt_j = w_j t^{w - e_j}.
  LaurentPoly derivative(int j) const {
    LaurentPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
      const long w = e[static_cast<size_t>(j)];
      if (w == 0) continue;
      Exponent q = e;
      q[static_cast<size_t>(j)] -= 1;
      p.add_term(q, c * Rational(w));
    }
    return p;
  }

  /// Exact evaluation; every coordinate of t must be nonzero if it appears
  /// with a negative exponent (we require nonzero throughout for simplicity
  /// whenever any negative exponent is present).
  Rational eval(const RatVector& t) const {
    if (t.size() != nvars_) throw SizeMismatch("evaluation point length != nvars");
    for (Index i = 0; i < t.size(); ++i)
      if (t(i) == 0 && uses_negative_power(static_cast<int>(i)))
        throw ZeroParameter();
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational v = c;
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) v *= pow_int(t(static_cast<Index>(i)), e[i]);
      acc += v;
    }
    return acc;
  }

  double eval_double(const Eigen::VectorXd& t) const {
    if (t.size() != nvars_) throw SizeMismatch("evaluation point length != nvars");
    double acc = 0;
    for (const auto& [e, c] : terms_) {
      double v = to_double(c);
      for (size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) v *= std::pow(t(static_cast<Index>(i)), static_cast<double>(e[i]));
      acc += v;
    }
    return acc;
  }

  bool has_negative_exponent() const {
    for (const auto& [e, c] : terms_)
      for (long x : e)
        if (x < 0) return true;
    return false;
  }

  long total_degree_of(const Exponent& e) const {
    return std::accumulate(e.begin(), e.end(), 0L);
  }

  /// Minimum total degree over the stored terms (polynomial use).
  long lowest_degree() const {
    if (terms_.empty()) throw Error("degree of the zero polynomial");
    long best = total_degree_of(terms_.begin()->first);
    for (const auto& [e, c] : terms_) best = std::min(best, total_degree_of(e));
    return best;
  }

  long highest_degree() const {
    if (terms_.empty()) throw Error("degree of the zero polynomial");
    long best = total_degree_of(terms_.begin()->first);
    for (const auto& [e, c] : terms_) best = std::max(best, total_degree_of(e));
    return best;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return lowest_degree() == highest_degree();
  }

  /// Sum of the terms of least total degree.
  LaurentPoly lowest_part() const {
    LaurentPoly p(nvars_);
    if (terms_.empty()) return p;
    const long d = lowest_degree();
    for (const auto& [e, c] : terms_)
      if (total_degree_of(e) == d) p.terms_[e] = c;
    return p;
  }

  /// Substitute t_j := value (a constant).  Result still has nvars_ slots.
  LaurentPoly substitute_value(int j, const Rational& value) const {
    LaurentPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
      const long w = e[static_cast<size_t>(j)];
      Rational coef = c;
      if (w != 0) coef *= pow_int(value, w);
      Exponent q = e;
      q[static_cast<size_t>(j)] = 0;
      p.add_term(q, coef);
    }
    return p;
  }

  /// Substitute t_j := g where g is any polynomial (requires nonnegative
  /// exponents of t_j in *this).
  LaurentPoly substitute_poly(int j, const LaurentPoly& g) const {
    check_vars(g);
    LaurentPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
      const long w = e[static_cast<size_t>(j)];
      if (w < 0) throw Unsupported("polynomial substitution into a negative power");
      Exponent q = e;
      q[static_cast<size_t>(j)] = 0;
      LaurentPoly term = monomial(nvars_, std::move(q), c);
      for (long i = 0; i < w; ++i) term = term * g;
      p += term;
    }
    return p;
  }

  /// Recenter: substitute t_j := t_j + c_j for every variable.
  /// Polynomial inputs only.
  LaurentPoly shift(const RatVector& center) const {
    if (center.size() != nvars_) throw SizeMismatch("shift center length");
    if (has_negative_exponent()) throw Unsupported("shift of a Laurent polynomial");
    LaurentPoly p = *this;
    for (int j = 0; j < nvars_; ++j) {
      if (center(j) == 0) continue;
      LaurentPoly g = variable(nvars_, j) + constant(nvars_, center(j));
      p = p.substitute_poly(j, g);
    }
    return p;
  }

  /// Append extra variable slots (exponent 0) at the end.
  LaurentPoly extended(int new_nvars) const {
    if (new_nvars < nvars_) throw SizeMismatch("extended shrinks variables");
    LaurentPoly p(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent q = e;
      q.resize(static_cast<size_t>(new_nvars), 0);
      p.terms_[std::move(q)] = c;
    }
    return p;
  }

  /// Move every variable to slot (old index + offset) inside a wider ring.
  LaurentPoly remapped(int new_nvars, int offset) const {
    if (offset < 0 || offset + nvars_ > new_nvars)
      throw SizeMismatch("remap out of range");
    LaurentPoly p(new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponent q(static_cast<size_t>(new_nvars), 0);
      for (size_t i = 0; i < e.size(); ++i) q[static_cast<size_t>(offset) + i] = e[i];
      p.terms_[std::move(q)] = c;
    }
    return p;
  }

  /// Composition f(g_0, ..., g_{nvars-1}) for polynomial f (nonnegative
  /// exponents); the g_i live in a common ring.
  LaurentPoly compose(const std::vector<LaurentPoly>& args) const {
    if (static_cast<int>(args.size()) != nvars_)
      throw SizeMismatch("compose arity mismatch");
    const int out_vars = args.empty() ? 0 : args[0].nvars();
    LaurentPoly acc(out_vars);
    for (const auto& [e, c] : terms_) {
      LaurentPoly term = LaurentPoly::constant(out_vars, c);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw Unsupported("compose with negative exponent");
        for (long rep = 0; rep < e[i]; ++rep) term = term * args[i];
      }
      acc += term;
    }
    return acc;
  }

  std::string str(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << to_string(c);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "*" << var << (i + 1);
        if (e[i] != 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  void check_vars(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_) throw SizeMismatch("laurent variable count mismatch");
  }

  bool uses_negative_power(int j) const {
    for (const auto& [e, c] : terms_)
      if (e[static_cast<size_t>(j)] < 0) return true;
    return false;
  }

  int nvars_;
  TermMap terms_;
};

/// A parametrized map: one Laurent polynomial per ambient coordinate.
using LaurentMap = std::vector<LaurentPoly>;

inline RatVector laurent_eval(const LaurentMap& f, const RatVector& t) {
  RatVector v(static_cast<Index>(f.size()));
  for (size_t i = 0; i < f.size(); ++i) v(static_cast<Index>(i)) = f[i].eval(t);
  return v;
}

inline Rational laurent_eval(const LaurentPoly& f, const RatVector& t) {
  return f.eval(t);
}

/// Entry (i,j) = dF_i/dt_j at t, by exact term-wise differentiation.
inline RatMatrix laurent_jacobian(const LaurentMap& f, const RatVector& t) {
  const Index rows = static_cast<Index>(f.size());
  const Index cols = t.size();
  RatMatrix jac(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      jac(i, j) = f[static_cast<size_t>(i)].derivative(static_cast<int>(j)).eval(t);
  return jac;
}

inline Eigen::VectorXd laurent_eval_double(const LaurentMap& f,
                                           const Eigen::VectorXd& t) {
  Eigen::VectorXd v(static_cast<Index>(f.size()));
  for (size_t i = 0; i < f.size(); ++i)
    v(static_cast<Index>(i)) = f[i].eval_double(t);
  return v;
}

}  // namespace legkit
