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

// Fast exact nullspaces for the large interpolation and stabilizer
// kernels.  Gauss-Jordan over Q suffers from intermediate coefficient
// swell even when the answer is small, so the kernel is computed modulo
// 62-bit primes, lifted by CRT, rationally reconstructed, and then
// CERTIFIED exactly: if M K = 0 holds in Q and K has cols - rank_p
// independent columns, then rank(M) >= rank_p forces span(K) = ker(M).
// The certificate never trusts the primes; a failed check just adds one.

#include <cstdint>
#include <vector>

#include "legkit/matrix.hpp"

namespace legkit {
namespace modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

/// Deterministic Miller-Rabin, exact for 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// The k-th prime below 2^62, scanning downward (deterministic).
inline u64 nth_prime(int k) {
  u64 candidate = (1ull << 62) - 1;
  int found = 0;
  for (;; candidate -= 2) {
    if (is_prime(candidate)) {
      if (found == k) return candidate;
      ++found;
    }
  }
}

/// Residue of a rational mod p; false when the denominator vanishes.
inline bool residue(const Rational& x, u64 p, u64* out) {
  const Int num = numerator(x) % Int(p);
  const Int den = denominator(x) % Int(p);
  u64 n = static_cast<u64>(num < 0 ? num + Int(p) : num);
  u64 d = static_cast<u64>(den);
  if (d == 0) return false;
  *out = mulmod(n, invmod(d, p), p);
  return true;
}

struct ModEchelon {
  std::vector<std::vector<u64>> rows;  // reduced rows
  std::vector<Index> pivots;
};

inline ModEchelon mod_rref(std::vector<std::vector<u64>> a, u64 p) {
  ModEchelon out;
  const Index rows = static_cast<Index>(a.size());
  const Index cols = rows ? static_cast<Index>(a[0].size()) : 0;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(r)]);
    const u64 inv = invmod(a[static_cast<size_t>(r)][static_cast<size_t>(c)], p);
    for (Index j = c; j < cols; ++j)
      a[static_cast<size_t>(r)][static_cast<size_t>(j)] =
          mulmod(a[static_cast<size_t>(r)][static_cast<size_t>(j)], inv, p);
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      const u64 f = a[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (Index j = c; j < cols; ++j) {
        const u64 sub = mulmod(f, a[static_cast<size_t>(r)][static_cast<size_t>(j)], p);
        u64& entry = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
        entry = entry >= sub ? entry - sub : entry + p - sub;
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(static_cast<size_t>(out.pivots.size()));
  out.rows = std::move(a);
  return out;
}

/// Canonical kernel basis mod p (mirrors the exact construction: free
/// columns get units, then reduced column echelon normalization).
inline std::vector<std::vector<u64>> mod_kernel(const ModEchelon& e, Index cols, u64 p) {
  const Index rank = static_cast<Index>(e.pivots.size());
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index piv : e.pivots) is_pivot[static_cast<size_t>(piv)] = true;
  std::vector<std::vector<u64>> basis;  // rows of K^T (columns of K)
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    std::vector<u64> v(static_cast<size_t>(cols), 0);
    v[static_cast<size_t>(f)] = 1;
    for (Index i = 0; i < rank; ++i) {
      const u64 entry = e.rows[static_cast<size_t>(i)][static_cast<size_t>(f)];
      v[static_cast<size_t>(e.pivots[static_cast<size_t>(i)])] = entry == 0 ? 0 : p - entry;
    }
    basis.push_back(std::move(v));
  }
  // normalize: reduced row echelon of K^T
  ModEchelon norm = mod_rref(std::move(basis), p);
  return norm.rows;
}

/// Rational reconstruction of r mod m with |num|, den <= sqrt(m/2).
inline bool rational_reconstruct(const Int& r, const Int& m, Rational* out) {
  const Int half = m / 2;
  const Int bound = boost::multiprecision::sqrt(half);
  Int a = m, b = r % m;
  if (b < 0) b += m;
  Int x0(0), x1(1);
  while (b > bound) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  if (x1 == 0) return false;
  Int num = b, den = x1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den > bound || boost::multiprecision::gcd(boost::multiprecision::abs(num), den) != 1)
    return false;
  *out = ratio(num, den);
  return true;
}

}  // namespace modular

/// Exact nullspace through the modular engine with an exact certificate.
/// Output is identical to mat_kernel (canonical reduced column echelon
/// basis); the modular data only steer the computation.
inline RatMatrix mat_kernel_fast(const RatMatrix& m) {
  using namespace modular;
  const Index rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return rat_identity(cols);

  std::vector<u64> primes;
  Int modulus(1);
  // residues of the canonical mod-p kernels, stacked per prime
  std::vector<std::vector<std::vector<u64>>> kernels;
  std::vector<Index> kernel_dims;

  for (int prime_index = 0, used = 0; used < 16; ++prime_index) {
    const u64 p = nth_prime(prime_index);
    // reduce the matrix mod p
    std::vector<std::vector<u64>> mp(static_cast<size_t>(rows),
                                     std::vector<u64>(static_cast<size_t>(cols)));
    bool good = true;
    for (Index i = 0; i < rows && good; ++i)
      for (Index j = 0; j < cols && good; ++j)
        good = residue(m(i, j), p, &mp[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    if (!good) continue;
    ModEchelon ech = mod_rref(std::move(mp), p);
    std::vector<std::vector<u64>> kp = mod_kernel(ech, cols, p);
    ++used;

    // keep only primes agreeing on the largest kernel dimension seen;
    // the certificate below is what actually guarantees correctness
    const Index dim = static_cast<Index>(kp.size());
    if (kernels.empty() || dim > kernel_dims.back()) {
      kernels.clear();
      kernel_dims.clear();
      primes.clear();
      modulus = 1;
    } else if (dim < kernel_dims.back()) {
      continue;
    }
    kernels.push_back(std::move(kp));
    kernel_dims.push_back(dim);
    primes.push_back(p);
    modulus *= Int(p);

    // CRT-combine and attempt reconstruction
    const Index dimk = kernel_dims.back();
    RatMatrix k(cols, dimk);
    bool reconstructed = true;
    for (Index c = 0; c < dimk && reconstructed; ++c) {
      for (Index r = 0; r < cols && reconstructed; ++r) {
        // combine residues across primes
        Int x(0), mod_acc(1);
        for (size_t pi = 0; pi < primes.size(); ++pi) {
          const Int pp(primes[pi]);
          const Int target(kernels[pi][static_cast<size_t>(c)][static_cast<size_t>(r)]);
          // x' = x + mod_acc * t with t = (target - x)/mod_acc mod pp
          Int diff = (target - x) % pp;
          if (diff < 0) diff += pp;
          Int inv_acc = 0;
          {
            // modular inverse of mod_acc mod pp via u64 arithmetic
            const u64 acc_mod = static_cast<u64>(mod_acc % pp);
            inv_acc = Int(invmod(acc_mod, primes[pi]));
          }
          Int t = (diff * inv_acc) % pp;
          x += mod_acc * t;
          mod_acc *= pp;
        }
        Rational value;
        reconstructed = rational_reconstruct(x, modulus, &value);
        if (reconstructed) k(r, c) = value;
      }
    }
    if (!reconstructed) continue;

    // exact certificate: M K = 0 and dim K = cols - rank_p
    if (RatMatrix(m * k).isZero(0)) {
      // columns are independent by the unit rows of the echelon form, and
      // rank(M) >= rank_p makes the span the whole kernel; canonicalize
      // exactly for bit-stable output
      if (k.cols() == 0) return k;
      return column_space_basis(k);
    }
  }
  // the modular engine kept disagreeing: fall back to the direct path
  return mat_kernel(m);
}

}  // namespace legkit
