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

#include <json.hpp>

#include <string>

#include "legkit/matpair.hpp"
#include "legkit/variety.hpp"

namespace legkit {

using Json = nlohmann::json;

// Rationals serialize as "p/q" (or "p" when q = 1); matrices as row-major
// nested arrays of such strings; Laurent polynomials as arrays of
// {"exp": [...], "coef": "p/q"}.

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational literal");
}

inline Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a matrix");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  RatMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<size_t>(r));
    if (static_cast<Index>(row.size()) != cols) throw ParseError("ragged matrix");
    for (Index c = 0; c < cols; ++c) m(r, c) = rational_from_json(row.at(static_cast<size_t>(c)));
  }
  return m;
}

inline Json to_json(const RatVector& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(to_string(v(i)));
  return arr;
}

inline RatVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a vector");
  RatVector v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j.at(i));
  return v;
}

inline Json to_json(const LaurentPoly& p) {
  Json arr = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json term;
    term["exp"] = e;
    term["coef"] = to_string(c);
    arr.push_back(std::move(term));
  }
  return arr;
}

inline LaurentPoly laurent_from_json(const Json& j, int nvars) {
  LaurentPoly p(nvars);
  if (!j.is_array()) throw ParseError("expected a term array");
  for (const auto& term : j) {
    LaurentPoly::Exponent e = term.at("exp").get<LaurentPoly::Exponent>();
    if (static_cast<int>(e.size()) != nvars) throw ParseError("exponent arity");
    p.add_term(e, rational_from_json(term.at("coef")));
  }
  return p;
}

inline Json to_json(const SymplecticSpace& s) {
  Json j;
  j["dim"] = s.dim();
  if (s.is_standard()) {
    j["standard"] = s.half_dim();
  } else {
    j["J"] = to_json(s.J());
  }
  return j;
}

inline SymplecticSpace space_from_json(const Json& j) {
  if (j.contains("standard")) return SymplecticSpace::standard(j.at("standard").get<Index>());
  return SymplecticSpace(j.at("dim").get<Index>(), matrix_from_json(j.at("J")));
}

inline Json to_json(const ParamVariety& x) {
  Json j;
  j["ambient"] = to_json(x.ambient());
  j["params"] = x.params();
  Json comps = Json::array();
  for (const auto& f : x.map()) comps.push_back(to_json(f));
  j["map"] = std::move(comps);
  j["label"] = x.label();
  return j;
}

inline ParamVariety variety_from_json(const Json& j) {
  SymplecticSpace ambient = space_from_json(j.at("ambient"));
  const int params = j.at("params").get<int>();
  LaurentMap map;
  for (const auto& comp : j.at("map")) map.push_back(laurent_from_json(comp, params));
  return ParamVariety(std::move(ambient), params, std::move(map),
                      j.value("label", std::string("unnamed")));
}

inline Json to_json(const VarietyReport& r) {
  Json j;
  j["label"] = r.label;
  j["samples"] = r.samples;
  j["tangent_dims"] = r.tangent_dims;
  j["lagrangian"] = r.lagrangian;
  j["all_lagrangian"] = r.all_lagrangian;
  j["not_full_dimensional"] = r.not_full_dimensional;
  if (r.i2_dim) j["i2_dim"] = *r.i2_dim;
  if (r.stab_dim) j["stab_dim"] = *r.stab_dim;
  j["nondegenerate"] = r.nondegenerate;
  j["point_rank"] = r.point_rank;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["pass"] = r.pass();
  return j;
}

inline Json to_json(const PairPoint& p) {
  Json j;
  j["A"] = to_json(p.A);
  j["B"] = to_json(p.B);
  return j;
}

inline PairPoint pair_from_json(const Json& j) {
  return {matrix_from_json(j.at("A")), matrix_from_json(j.at("B"))};
}

}  // namespace legkit
