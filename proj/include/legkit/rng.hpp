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

#include <cstdint>

#include "legkit/rational.hpp"

namespace legkit {

// Counter-based generator: every draw is a pure function of the
// (seed, index, slot, attempt) coordinates, so sample loops can run in any
// order (or in parallel) and still produce identical streams.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_counters(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (a * 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b * 0xc2b2ae3d27d4eb4fULL));
  h = splitmix64(h ^ (c * 0x165667b19e3779f9ULL));
  return h;
}

/// Nonzero rational with numerator in [-9,9] and denominator in [1,9].
inline Rational small_rational(std::uint64_t seed, std::uint64_t index,
                               std::uint64_t slot, std::uint64_t attempt = 0) {
  std::uint64_t h = mix_counters(seed, index, slot, attempt);
  long long num = 1 + static_cast<long long>(h % 9);
  if ((h >> 8) & 1) num = -num;
  long long den = 1 + static_cast<long long>((h >> 16) % 9);
  return ratio(num, den);
}

/// Integer in [lo, hi].
inline long long small_int(std::uint64_t seed, std::uint64_t index,
                           std::uint64_t slot, long long lo, long long hi,
                           std::uint64_t attempt = 0) {
  std::uint64_t h = mix_counters(seed, index, slot, attempt + 0x51ULL);
  return lo + static_cast<long long>(h % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace legkit
