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
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "legkit/threads.hpp"
#include "legkit/variety.hpp"

namespace legkit {

/// A coprime weight tuple a_0 >= a_1 >= ... >= a_{n-1} > 0 together with
/// the torus weights it induces: w_0 = (a_1, ..., a_{n-1}), w_i = a_0 e_i,
/// and their negatives.
class WeightSystem {
 public:
  explicit WeightSystem(std::vector<long> a) : a_(std::move(a)) {
    if (a_.size() < 2) throw InvalidWeights("need at least two weights");
    long g = 0;
    for (size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] <= 0) throw InvalidWeights("weights must be positive");
      if (i > 0 && a_[i] > a_[i - 1]) throw InvalidWeights("weights must be non-increasing");
      g = std::gcd(g, a_[i]);
    }
    if (g != 1) throw InvalidWeights("weights must be coprime");
  }

  int n() const { return static_cast<int>(a_.size()); }
  int lattice_dim() const { return n() - 1; }
  const std::vector<long>& a() const { return a_; }

  /// w_0, w_1, ..., w_{n-1}, -w_0, ..., -w_{n-1}  (2n lattice points).
  std::vector<std::vector<long>> weight_points() const {
    const int d = lattice_dim();
    std::vector<std::vector<long>> pts;
    pts.reserve(2 * static_cast<size_t>(n()));
    std::vector<long> w0(a_.begin() + 1, a_.end());
    pts.push_back(w0);
    for (int i = 0; i < d; ++i) {
      std::vector<long> w(static_cast<size_t>(d), 0);
      w[static_cast<size_t>(i)] = a_[0];
      pts.push_back(std::move(w));
    }
    const size_t half = pts.size();
    for (size_t i = 0; i < half; ++i) {
      std::vector<long> neg = pts[i];
      for (long& x : neg) x = -x;
      pts.push_back(std::move(neg));
    }
    return pts;
  }

 private:
  std::vector<long> a_;
};

/// The torus-orbit closure of [-a_0, a_1, ..., a_{n-1}, 1, ..., 1] under
/// the weight action: coordinates (-a_0 t^{w_0}, a_i t^{w_i}, t^{-w_0},
/// t^{-w_i}) in the standard symplectic space of dimension 2n.
inline ParamVariety build_toric_legendrian(const std::vector<long>& a) {
  WeightSystem ws(a);
  const int n = ws.n();
  const int d = ws.lattice_dim();
  auto pts = ws.weight_points();
  LaurentMap map;
  map.reserve(2 * static_cast<size_t>(n));
  auto mono = [&](const std::vector<long>& w, long coef) {
    LaurentPoly::Exponent e(w.begin(), w.end());
    return LaurentPoly::monomial(d, std::move(e), Rational(coef));
  };
  map.push_back(mono(pts[0], -a[0]));                      // -a_0 t^{w_0}
  for (int i = 1; i < n; ++i) map.push_back(mono(pts[static_cast<size_t>(i)], a[static_cast<size_t>(i)]));
  for (int i = 0; i < n; ++i) map.push_back(mono(pts[static_cast<size_t>(n + i)], 1));
  std::string label = "toric-";
  for (size_t i = 0; i < a.size(); ++i)
    label += (i ? "," : "") + std::to_string(a[i]);
  return ParamVariety(SymplecticSpace::standard(n), d, std::move(map), label);
}

/// Convex hull data of the weight polytope conv{±w_i}: vertices and edges,
/// as indices into `points`.
struct LatticePolytope {
  std::vector<std::vector<long>> points;
  std::vector<int> vertices;
  std::vector<std::pair<int, int>> edges;  // pairs of vertex indices, i < j

  bool has_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& e : edges)
      if (e.first == i && e.second == j) return true;
    return false;
  }

  int degree(int v) const {
    int deg = 0;
    for (const auto& e : edges) deg += (e.first == v || e.second == v);
    return deg;
  }
};

namespace detail {

inline RatVector lattice_to_vec(const std::vector<long>& p) {
  RatVector v(static_cast<Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) v(static_cast<Index>(i)) = Rational(p[i]);
  return v;
}

/// Is p a convex combination of the given points?  Exhaustive over
/// affinely independent subsets of size <= d+1 (Caratheodory).  Used as an
/// independent oracle for the facet-based vertex computation.
inline bool in_convex_hull(const std::vector<long>& p,
                           const std::vector<const std::vector<long>*>& pts) {
  const int d = static_cast<int>(p.size());
  const int npts = static_cast<int>(pts.size());
  std::vector<int> subset;
  RatVector target(d + 1);
  for (int i = 0; i < d; ++i) target(i) = Rational(p[static_cast<size_t>(i)]);
  target(d) = 1;

  // iterate over subsets of size s = 1..d+1
  std::vector<int> idx;
  std::function<bool(int, int)> rec = [&](int start, int remaining) -> bool {
    if (remaining == 0) {
      RatMatrix m(d + 1, static_cast<Index>(idx.size()));
      for (size_t c = 0; c < idx.size(); ++c) {
        const auto& q = *pts[static_cast<size_t>(idx[c])];
        for (int r = 0; r < d; ++r) m(r, static_cast<Index>(c)) = Rational(q[static_cast<size_t>(r)]);
        m(d, static_cast<Index>(c)) = 1;
      }
      auto lambda = solve(m, target);
      if (!lambda) return false;
      // require the solved system to have a unique solution on this subset:
      // affine independence <=> full column rank; otherwise a different
      // subset of smaller size will catch the combination.
      if (rank(m) != m.cols()) return false;
      for (Index i = 0; i < lambda->size(); ++i)
        if ((*lambda)(i) < 0) return false;
      return true;
    }
    for (int i = start; i <= npts - remaining; ++i) {
      idx.push_back(i);
      if (rec(i + 1, remaining - 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  for (int s = 1; s <= d + 1; ++s) {
    idx.clear();
    if (rec(0, s)) return true;
  }
  return false;
}

}  // namespace detail

/// Exhaustive supporting-hyperplane computation of the hull: facets are
/// found as supporting hyperplanes spanned by point subsets, vertices by
/// exact convex-combination tests, and a pair is certified an edge exactly
/// when the intersection of the facets through it is a segment with those
/// endpoints.
inline LatticePolytope hull_edges(const WeightSystem& ws) {
  if (ws.n() < 3) throw InvalidRange("polytope dimension must be at least 2");
  LatticePolytope out;
  out.points = ws.weight_points();
  const int d = ws.lattice_dim();
  const int npts = static_cast<int>(out.points.size());

  // Facets: supporting hyperplanes through affinely independent d-subsets.
  std::vector<std::set<int>> facets;
  std::set<std::vector<Rational>> seen;  // normalized (c, b) keys
  std::vector<int> idx;
  std::function<void(int, int)> enumerate = [&](int start, int remaining) {
    if (remaining == 0) {
      // affine hull of the subset: normal from the kernel of differences
      RatMatrix diffs(d - 1 > 0 ? d - 1 : 0, d);
      for (int r = 1; r < d; ++r)
        for (int c = 0; c < d; ++c)
          diffs(r - 1, c) = Rational(out.points[static_cast<size_t>(idx[static_cast<size_t>(r)])][static_cast<size_t>(c)] -
                                     out.points[static_cast<size_t>(idx[0])][static_cast<size_t>(c)]);
      RatMatrix normal = mat_kernel(diffs);
      if (normal.cols() != 1) return;  // affinely dependent subset
      RatVector c = normal.col(0);
      Rational b(0);
      for (int r = 0; r < d; ++r) b += c(r) * Rational(out.points[static_cast<size_t>(idx[0])][static_cast<size_t>(r)]);
      // orient: all points on the <= side
      bool has_above = false, has_below = false;
      for (const auto& p : out.points) {
        Rational v(0);
        for (int r = 0; r < d; ++r) v += c(r) * Rational(p[static_cast<size_t>(r)]);
        if (v > b) has_above = true;
        if (v < b) has_below = true;
      }
      if (has_above && has_below) return;
      if (has_above) {
        c = -c;
        b = -b;
      }
      std::vector<Rational> key;
      key.reserve(static_cast<size_t>(d) + 1);
      for (int r = 0; r < d; ++r) key.push_back(c(r));
      key.push_back(b);
      if (!seen.insert(key).second) return;
      std::set<int> face;
      for (int i = 0; i < npts; ++i) {
        Rational v(0);
        for (int r = 0; r < d; ++r) v += c(r) * Rational(out.points[static_cast<size_t>(i)][static_cast<size_t>(r)]);
        if (v == b) face.insert(i);
      }
      facets.push_back(std::move(face));
      return;
    }
    for (int i = start; i <= npts - remaining; ++i) {
      idx.push_back(i);
      enumerate(i + 1, remaining - 1);
      idx.pop_back();
    }
  };
  idx.clear();
  enumerate(0, d);

  // Vertices: a point is a vertex iff the intersection of all facets
  // through it is the point alone (interior points sit in no facet).
  for (int i = 0; i < npts; ++i) {
    std::set<int> face;
    bool first = true;
    for (const auto& f : facets) {
      if (!f.count(i)) continue;
      if (first) {
        face = f;
        first = false;
      } else {
        std::set<int> inter;
        std::set_intersection(face.begin(), face.end(), f.begin(), f.end(),
                              std::inserter(inter, inter.begin()));
        face = std::move(inter);
      }
    }
    if (!first && face.size() == 1) out.vertices.push_back(i);
  }

  // Edges: minimal face through a vertex pair = intersection of facets.
  for (size_t a = 0; a < out.vertices.size(); ++a) {
    for (size_t b = a + 1; b < out.vertices.size(); ++b) {
      const int i = out.vertices[a];
      const int j = out.vertices[b];
      std::set<int> face;
      bool first = true;
      for (const auto& f : facets) {
        if (!f.count(i) || !f.count(j)) continue;
        if (first) {
          face = f;
          first = false;
        } else {
          std::set<int> inter;
          std::set_intersection(face.begin(), face.end(), f.begin(), f.end(),
                                std::inserter(inter, inter.begin()));
          face = std::move(inter);
        }
      }
      if (first) continue;  // no facet carries both: minimal face is the polytope
      // the face must be the segment [p_i, p_j]: all its points on the
      // segment, with i and j as the endpoints
      const auto& pi = out.points[static_cast<size_t>(i)];
      const auto& pj = out.points[static_cast<size_t>(j)];
      int axis = -1;
      for (int r = 0; r < d; ++r)
        if (pj[static_cast<size_t>(r)] != pi[static_cast<size_t>(r)]) {
          axis = r;
          break;
        }
      bool is_edge = true;
      for (int k : face) {
        const auto& pk = out.points[static_cast<size_t>(k)];
        const Rational t = ratio(pk[static_cast<size_t>(axis)] - pi[static_cast<size_t>(axis)],
                                 pj[static_cast<size_t>(axis)] - pi[static_cast<size_t>(axis)]);
        if (t < 0 || t > 1) {
          is_edge = false;
          break;
        }
        for (int r = 0; r < d && is_edge; ++r) {
          const Rational expect = Rational(pi[static_cast<size_t>(r)]) +
                                  t * Rational(pj[static_cast<size_t>(r)] - pi[static_cast<size_t>(r)]);
          if (expect != Rational(pk[static_cast<size_t>(r)])) is_edge = false;
        }
        if (!is_edge) break;
      }
      if (is_edge) out.edges.emplace_back(i, j);
    }
  }
  return out;
}

/// Canonical column Hermite normal form of an integer matrix whose columns
/// generate a lattice; two generating sets span the same lattice iff their
/// forms agree.
inline std::vector<std::vector<Int>> hermite_normal_form(
    std::vector<std::vector<Int>> cols, int dim) {
  int c = 0;
  const int k = static_cast<int>(cols.size());
  for (int r = 0; r < dim && c < k; ++r) {
    // gcd phase on row r among columns >= c
    for (;;) {
      int best = -1;
      int count = 0;
      for (int j = c; j < k; ++j) {
        if (cols[static_cast<size_t>(j)][static_cast<size_t>(r)] != 0) {
          ++count;
          if (best < 0 ||
              boost::multiprecision::abs(cols[static_cast<size_t>(j)][static_cast<size_t>(r)]) <
                  boost::multiprecision::abs(cols[static_cast<size_t>(best)][static_cast<size_t>(r)]))
            best = j;
        }
      }
      if (count == 0) break;
      std::swap(cols[static_cast<size_t>(best)], cols[static_cast<size_t>(c)]);
      if (count == 1) break;
      const Int pivot = cols[static_cast<size_t>(c)][static_cast<size_t>(r)];
      for (int j = c + 1; j < k; ++j) {
        const Int v = cols[static_cast<size_t>(j)][static_cast<size_t>(r)];
        if (v == 0) continue;
        const Int q = v / pivot;  // truncated division shrinks |entry|
        for (int rr = 0; rr < dim; ++rr)
          cols[static_cast<size_t>(j)][static_cast<size_t>(rr)] -= q * cols[static_cast<size_t>(c)][static_cast<size_t>(rr)];
      }
    }
    if (cols[static_cast<size_t>(c)][static_cast<size_t>(r)] == 0) continue;
    if (cols[static_cast<size_t>(c)][static_cast<size_t>(r)] < 0)
      for (int rr = 0; rr < dim; ++rr) cols[static_cast<size_t>(c)][static_cast<size_t>(rr)] = -cols[static_cast<size_t>(c)][static_cast<size_t>(rr)];
    const Int pivot = cols[static_cast<size_t>(c)][static_cast<size_t>(r)];
    for (int j = 0; j < c; ++j) {
      // canonical range [0, pivot) left of the pivot
      Int v = cols[static_cast<size_t>(j)][static_cast<size_t>(r)];
      Int q = v / pivot;
      if (v - q * pivot < 0) q -= 1;  // floor division
      if (q != 0)
        for (int rr = 0; rr < dim; ++rr)
          cols[static_cast<size_t>(j)][static_cast<size_t>(rr)] -= q * cols[static_cast<size_t>(c)][static_cast<size_t>(rr)];
    }
    ++c;
  }
  cols.resize(static_cast<size_t>(c));
  return cols;
}

struct SmoothnessVerdict {
  bool simple = false;      // every vertex meets exactly n-1 edges
  bool lattice_ok = false;  // edge vectors generate the full weight lattice at each vertex
  bool pass() const { return simple && lattice_ok; }
};

/// The per-vertex lattice criterion: the polytope must be simple and at
/// every vertex the directions toward the nearest weight on each edge must
/// generate the lattice spanned by all weights relative to that vertex.
/// (An edge can carry a weight strictly between its endpoints; the chart
/// semigroup is generated by the nearest one, so that is the vector that
/// matters.)  This is the necessary condition used by the classification;
/// survivors are the known smooth varieties.
inline SmoothnessVerdict vertex_smoothness_test(const WeightSystem& ws) {
  SmoothnessVerdict verdict;
  LatticePolytope hull = hull_edges(ws);
  const int d = ws.lattice_dim();
  verdict.simple = true;
  for (int v : hull.vertices)
    verdict.simple = verdict.simple && hull.degree(v) == d;
  verdict.lattice_ok = true;
  for (int v : hull.vertices) {
    std::vector<std::vector<Int>> edge_vecs;
    for (const auto& e : hull.edges) {
      int other = -1;
      if (e.first == v) other = e.second;
      if (e.second == v) other = e.first;
      if (other < 0) continue;
      const auto& pv = hull.points[static_cast<size_t>(v)];
      const auto& pw = hull.points[static_cast<size_t>(other)];
      // nearest weight on the segment (v, other], by the parameter along
      // the first axis where the endpoints differ
      int axis = 0;
      while (pw[static_cast<size_t>(axis)] == pv[static_cast<size_t>(axis)]) ++axis;
      int best = other;
      Rational best_t(1);
      for (int p = 0; p < static_cast<int>(hull.points.size()); ++p) {
        if (p == v) continue;
        const auto& pp = hull.points[static_cast<size_t>(p)];
        const Rational t = ratio(pp[static_cast<size_t>(axis)] - pv[static_cast<size_t>(axis)],
                                 pw[static_cast<size_t>(axis)] - pv[static_cast<size_t>(axis)]);
        if (t <= 0 || t > best_t) continue;
        bool on_segment = true;
        for (int r = 0; r < d && on_segment; ++r) {
          const Rational expect = Rational(pv[static_cast<size_t>(r)]) +
                                  t * Rational(pw[static_cast<size_t>(r)] - pv[static_cast<size_t>(r)]);
          on_segment = expect == Rational(pp[static_cast<size_t>(r)]);
        }
        if (on_segment && t < best_t) {
          best_t = t;
          best = p;
        }
      }
      std::vector<Int> vec(static_cast<size_t>(d));
      for (int r = 0; r < d; ++r)
        vec[static_cast<size_t>(r)] = Int(hull.points[static_cast<size_t>(best)][static_cast<size_t>(r)] -
                                          hull.points[static_cast<size_t>(v)][static_cast<size_t>(r)]);
      edge_vecs.push_back(std::move(vec));
    }
    std::vector<std::vector<Int>> all_vecs;
    for (int i = 0; i < static_cast<int>(hull.points.size()); ++i) {
      if (i == v) continue;
      std::vector<Int> vec(static_cast<size_t>(d));
      for (int r = 0; r < d; ++r)
        vec[static_cast<size_t>(r)] = Int(hull.points[static_cast<size_t>(i)][static_cast<size_t>(r)] -
                                          hull.points[static_cast<size_t>(v)][static_cast<size_t>(r)]);
      all_vecs.push_back(std::move(vec));
    }
    if (hermite_normal_form(edge_vecs, d) != hermite_normal_form(all_vecs, d)) {
      verdict.lattice_ok = false;
      break;
    }
  }
  return verdict;
}

/// All coprime non-increasing tuples of the given length with a_0 bounded,
/// filtered by the vertex smoothness test.  Output in decreasing
/// lexicographic order; enumeration is partitioned by a_0.
inline std::vector<std::vector<long>> classify_smooth_candidates(int dim,
                                                                 long max_weight) {
  if (dim < 2 || dim > 5) throw InvalidRange("classification dimension must be 2..5");
  if (max_weight < 2) throw InvalidRange("weight bound must be at least 2");
  const int n = dim + 1;
  std::vector<std::vector<std::vector<long>>> per_a0(static_cast<size_t>(max_weight));
  parallel_for_index(static_cast<size_t>(max_weight), [&](size_t slot) {
    const long a0 = static_cast<long>(max_weight - static_cast<long>(slot));
    std::vector<long> tuple{a0};
    std::function<void()> rec = [&]() {
      if (static_cast<int>(tuple.size()) == n) {
        long g = 0;
        for (long v : tuple) g = std::gcd(g, v);
        if (g != 1) return;
        if (vertex_smoothness_test(WeightSystem(tuple)).pass())
          per_a0[slot].push_back(tuple);
        return;
      }
      for (long v = tuple.back(); v >= 1; --v) {
        tuple.push_back(v);
        rec();
        tuple.pop_back();
      }
    };
    rec();
  });
  std::vector<std::vector<long>> out;
  for (const auto& bucket : per_a0)
    for (const auto& t : bucket) out.push_back(t);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace legkit
