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

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "legkit/errors.hpp"

namespace legkit {

/// Exact rational scalar.  GMP keeps values canonical: lowest terms,
/// positive denominator, zero represented as 0/1.
using Rational = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

/// num/den with explicit sign handling (the raw two-argument constructor
/// misinterprets negative denominators).
inline Rational ratio(long long num, long long den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num);
  r /= Rational(den);
  return r;
}

inline Rational ratio(const Int& num, const Int& den) {
  if (den == 0) throw Error("zero denominator");
  Rational r(num);
  r /= Rational(den);
  return r;
}

/// x^e for integer e (negative allowed when x != 0).
inline Rational pow_int(const Rational& x, long e) {
  if (e == 0) return Rational(1);
  if (x == 0) {
    if (e > 0) return Rational(0);
    throw ZeroParameter("negative power of zero");
  }
  Rational base = e > 0 ? x : Rational(1) / x;
  unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-e);
  Rational acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

/// Serialized form: "p/q", or just "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return ratio(num, den);
  } catch (const std::exception&) {
    throw ParseError("malformed rational literal: " + s);
  }
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace legkit
