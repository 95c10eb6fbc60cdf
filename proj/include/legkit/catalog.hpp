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

#include <string>
#include <vector>

#include "legkit/matpair.hpp"
#include "legkit/toric.hpp"

namespace legkit {

/// Built-in varieties: the toric family, the matrix-pair families and
/// their symmetric/skew variants, the Segre threefold, plus one
/// deliberately non-Lagrangian control curve.
struct CatalogEntry {
  std::string name;
  std::string description;
  ParamVariety (*builder)();
};

namespace catalog_detail {

inline ParamVariety rnc_control() {
  // rational normal curve (1, t, t^2, t^3): full-dimensional cone tangents
  // but the form does not vanish on them
  const int nv = 1;
  LaurentMap map = {LaurentPoly::constant(nv, Rational(1)),
                    LaurentPoly::variable(nv, 0),
                    LaurentPoly::monomial(nv, {2}, Rational(1)),
                    LaurentPoly::monomial(nv, {3}, Rational(1))};
  return ParamVariety(SymplecticSpace::standard(2), nv, std::move(map), "rnc-control");
}

inline ParamVariety linear_lagrangian_plane() {
  // the Lagrangian coordinate plane span(e_1, e_2) in Q^4
  const int nv = 2;
  LaurentMap map = {LaurentPoly::variable(nv, 0), LaurentPoly::variable(nv, 1),
                    LaurentPoly(nv), LaurentPoly(nv)};
  return ParamVariety(SymplecticSpace::standard(2), nv, std::move(map),
                      "lagrangian-plane");
}

}  // namespace catalog_detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"toric-2,1,1", "P^1 x Q_1 in P^5",
       [] { return build_toric_legendrian({2, 1, 1}); }},
      {"toric-1,1,1", "P^2 blown up in three points, in P^5",
       [] { return build_toric_legendrian({1, 1, 1}); }},
      {"toric-1,1,1,1", "P^1 x P^1 x P^1 in P^7",
       [] { return build_toric_legendrian({1, 1, 1, 1}); }},
      {"xinv-2", "pairs (g, (g^-1)^T), 2x2: a linear subspace",
       [] { return build_xinv_variety(2); }},
      {"xinv-3", "pairs (g, (g^-1)^T), 3x3: smooth 8-fold",
       [] { return build_xinv_variety(3); }},
      {"xinv-4", "pairs (g, (g^-1)^T), 4x4: the 15-dim spinor variety",
       [] { return build_xinv_variety(4); }},
      {"xinv-5", "pairs (g, (g^-1)^T), 5x5: singular",
       [] { return build_xinv_variety(5); }},
      {"xinv-sym-3", "symmetric pairs (A, A^-1), 3x3",
       [] { return build_xinv_variety(3, PairFlavor::Symmetric); }},
      {"xinv-skew-6", "skew pairs (A, -A^-1), 6x6 with Pfaffian 1",
       [] { return build_xinv_variety(6, PairFlavor::Skew); }},
      {"xdeg-2,1", "rank-split degenerate pairs, m=2, k=1",
       [] { return build_xdeg_variety(2, 1); }},
      {"xdeg-3,1", "rank-split degenerate pairs, m=3, k=1",
       [] { return build_xdeg_variety(3, 1); }},
      {"segre-p1xp1xp1", "the Segre threefold in pair coordinates",
       [] { return build_segre_xdeg21(); }},
      {"lagrangian-plane", "linear Lagrangian plane in Q^4",
       [] { return catalog_detail::linear_lagrangian_plane(); }},
      {"rnc-control", "rational normal curve: NOT Legendrian (control)",
       [] { return catalog_detail::rnc_control(); }},
  };
  return entries;
}

inline ParamVariety build_catalog(const std::string& name) {
  for (const auto& entry : catalog())
    if (entry.name == name) return entry.builder();
  throw ParseError("unknown catalog entry: " + name);
}

}  // namespace legkit
