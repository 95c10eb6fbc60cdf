#include <doctest.h>

#include <legkit/catalog.hpp>
#include <legkit/matpair.hpp>
#include <legkit/rng.hpp>
#include <legkit/toric.hpp>
#include <legkit/variety.hpp>

using namespace legkit;

namespace {

RatVector vec(std::initializer_list<Rational> vals) {
  RatVector v(static_cast<Index>(vals.size()));
  Index i = 0;
  for (const auto& x : vals) v(i++) = x;
  return v;
}

RatMatrix random_symmetric(Index n, std::uint64_t seed) {
  RatMatrix s = rat_zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) {
      s(i, j) = small_rational(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
      s(j, i) = s(i, j);
    }
  return s;
}

}  // namespace

TEST_CASE("parametrized map evaluation") {
  ParamVariety toric = build_toric_legendrian({2, 1, 1});
  RatVector t = vec({Rational(2), Rational(3)});
  CHECK(toric.eval(t) == vec({Rational(-12), Rational(4), Rational(9), ratio(1, 6),
                              ratio(1, 4), ratio(1, 9)}));

  // the triangular chart of the invertible pairs sends the origin to (Id, Id)
  ParamVariety xinv3 = build_xinv_variety(3);
  RatVector id_params = RatVector::Zero(8);
  id_params(3) = 1;  // u_1
  id_params(4) = 1;  // u_2
  MatrixPairSpec spec(3, PairFlavor::Full);
  PairPoint p = spec.unflatten(xinv3.eval(id_params));
  CHECK(p.A == rat_identity(3));
  CHECK(p.B == rat_identity(3));

  // chart consistency: at random parameters B = (A^{-1})^T with det A = 1
  for (std::uint64_t i = 0; i < 5; ++i) {
    RatVector params = sample_params(xinv3, 5, i);
    PairPoint q = spec.unflatten(xinv3.eval(params));
    CHECK(det(q.A) == Rational(1));
    CHECK(q.B == inverse(q.A).transpose());
  }
}

TEST_CASE("sampling is deterministic and nonzero") {
  ParamVariety toric = build_toric_legendrian({2, 1, 1});
  RatVector a = sample_point(toric, 3, 14);
  RatVector b = sample_point(toric, 3, 14);
  CHECK(a == b);
  CHECK(!a.isZero(0));
  CHECK(sample_point(toric, 3, 15) != a);
}

TEST_CASE("cone tangent spaces") {
  {
    ParamVariety toric = build_toric_legendrian({2, 1, 1});
    RatVector t = vec({Rational(1), Rational(1)});
    Subspace tangent = cone_tangent_space(toric, t);
    CHECK(tangent.dim() == 3);
    // contains the point and the two hand-computed tangent vectors
    CHECK(tangent.contains(vec({Rational(-2), Rational(1), Rational(1), Rational(1),
                                Rational(1), Rational(1)})));
    CHECK(tangent.contains(vec({Rational(-2), Rational(2), Rational(0), Rational(-1),
                                Rational(-2), Rational(0)})));
    CHECK(tangent.contains(vec({Rational(-2), Rational(0), Rational(2), Rational(-1),
                                Rational(0), Rational(-2)})));
  }
  {
    // constant map: only the point itself
    LaurentMap constant = {LaurentPoly::constant(1, Rational(1)), LaurentPoly(1),
                           LaurentPoly(1), LaurentPoly(1)};
    ParamVariety x(SymplecticSpace::standard(2), 1, std::move(constant), "point");
    CHECK(cone_tangent_space(x, vec({Rational(5)})).dim() == 1);
  }
  {
    ParamVariety xinv3 = build_xinv_variety(3);
    RatVector id_params = RatVector::Zero(8);
    id_params(3) = 1;
    id_params(4) = 1;
    CHECK(cone_tangent_space(xinv3, id_params).dim() == 9);
  }
}

TEST_CASE("legendrian certification") {
  {
    VarietyReport r = legendrian_check(build_toric_legendrian({2, 1, 1}), 10, 0);
    CHECK(r.pass());
    CHECK(r.nondegenerate);
    CHECK(r.point_rank == 6);
  }
  {
    VarietyReport r = legendrian_check(build_xinv_variety(3), 10, 0);
    CHECK(r.pass());
  }
  {
    // the rational normal curve control: full tangents, nonvanishing form
    VarietyReport r = legendrian_check(build_catalog("rnc-control"), 5, 0);
    CHECK(!r.pass());
    CHECK(!r.not_full_dimensional);
    CHECK(r.failure.find("omega") != std::string::npos);
  }
  {
    // hand check of the control: omega(point, tangent) = 2t + 2t^3 at t=1
    ParamVariety rnc = build_catalog("rnc-control");
    RatVector t = vec({Rational(1)});
    RatVector p = rnc.eval(t);
    RatMatrix jac = rnc.jacobian(t);
    CHECK(rnc.ambient().omega(p, jac.col(0)) == Rational(4));
  }
}

TEST_CASE("legendrian verdict is invariant under symplectic coordinate change") {
  SymplecticSpace s = SymplecticSpace::standard(3);
  // unipotent shears exp(N) = I + N with N in sp, N^2 = 0
  RatMatrix upper = rat_zero(6, 6);
  upper.topRightCorner(3, 3) = random_symmetric(3, 21);
  RatMatrix lower = rat_zero(6, 6);
  lower.bottomLeftCorner(3, 3) = random_symmetric(3, 22);
  RatMatrix sp = (rat_identity(6) + upper) * (rat_identity(6) + lower);
  CHECK(RatMatrix(sp.transpose() * s.J() * sp) == s.J());

  for (const char* name : {"toric-2,1,1", "toric-1,1,1"}) {
    ParamVariety x = build_catalog(name);
    ParamVariety y = linear_transform(sp, x);
    CHECK(legendrian_check(x, 5, 1).pass() == legendrian_check(y, 5, 1).pass());
  }
  ParamVariety bad = linear_transform(sp, [] {
    // embed the control curve into dimension 6 by padding zeros
    ParamVariety rnc = build_catalog("rnc-control");
    LaurentMap map = rnc.map();
    LaurentMap padded;
    padded.push_back(map[0]);
    padded.push_back(map[1]);
    padded.push_back(LaurentPoly(1));
    padded.push_back(map[2]);
    padded.push_back(map[3]);
    padded.push_back(LaurentPoly(1));
    return ParamVariety(SymplecticSpace::standard(3), 1, std::move(padded), "rnc6");
  }());
  CHECK(!legendrian_check(bad, 5, 1).pass());
}

TEST_CASE("quadric interpolation") {
  {
    // Lagrangian coordinate plane in Q^4: quadrics vanishing on it
    ParamVariety plane = build_catalog("lagrangian-plane");
    auto quadrics = interpolate_quadrics(plane, 2 * 10, 0);
    CHECK(quadrics.size() == 7);
    for (const auto& q : quadrics) CHECK(in_sp(rho(q), plane.ambient()));
    // dimension independent of the seed
    CHECK(interpolate_quadrics(plane, 20, 1).size() == 7);
    CHECK(interpolate_quadrics(plane, 20, 2).size() == 7);
  }
  {
    // a map whose cone fills the ambient plane has no quadrics
    LaurentMap map = {LaurentPoly::variable(1, 0), LaurentPoly::constant(1, Rational(1))};
    ParamVariety full(SymplecticSpace::standard(1), 1, std::move(map), "chart");
    CHECK(interpolate_quadrics(full, 2 * 3, 0).empty());
  }
  {
    // the 2x2 invertible pairs: a 4-dim linear subspace of Q^8
    ParamVariety xinv2 = build_xinv_variety(2);
    auto quadrics = interpolate_quadrics(xinv2, 2 * 36, 0);
    CHECK(quadrics.size() == 26);  // Sym^2(8) - Sym^2(4) = 36 - 10
  }
  CHECK_THROWS_AS(interpolate_quadrics(build_catalog("lagrangian-plane"), 5, 0),
                  InvalidRange);
}

TEST_CASE("stabilizer algebra") {
  {
    ParamVariety plane = build_catalog("lagrangian-plane");
    StabilizerAlgebra stab = stabilizer_algebra(plane, 8, 0);
    CHECK(stab.dim() == 12);  // block-triangular stabilizer of a 2-plane
    CHECK(stab.contains(rat_identity(4)));
    CHECK(is_bracket_closed(stab.basis).closed);
    // contains rho of every interpolated quadric
    for (const auto& q : interpolate_quadrics(plane, 20, 0))
      CHECK(stab.contains(rho(q)));
  }
  {
    // the toric (1,1,1) surface carries the 2-torus in its stabilizer
    ParamVariety toric = build_toric_legendrian({1, 1, 1});
    StabilizerAlgebra stab = stabilizer_algebra(toric, 12, 0);
    WeightSystem ws({1, 1, 1});
    auto pts = ws.weight_points();
    for (int axis = 0; axis < 2; ++axis) {
      RatMatrix d = rat_zero(6, 6);
      for (int c = 0; c < 6; ++c) d(c, c) = Rational(pts[static_cast<size_t>(c)][static_cast<size_t>(axis)]);
      CHECK(stab.contains(d));
    }
    CHECK(stab.contains(rat_identity(6)));
    CHECK(is_bracket_closed(stab.basis).closed);
  }
}

TEST_CASE("stabilizer equals rho(I2) plus scalars on smooth catalog varieties") {
  // cheap members of the smooth non-linear list; the heavier ones are in
  // the "large families" case below
  for (const char* name : {"toric-2,1,1", "toric-1,1,1", "toric-1,1,1,1",
                           "xinv-3", "xinv-sym-3"}) {
    ParamVariety x = build_catalog(name);
    const Index dim = x.ambient().dim();
    auto quadrics = interpolate_quadrics(x, dim * (dim + 1), 0);
    StabilizerAlgebra stab = stabilizer_algebra(
        x, std::max<Index>(2 * dim, dim * dim / 4), 1);
    CHECK(stab.dim() == static_cast<Index>(quadrics.size()) + 1);
    CHECK(stab.contains(rat_identity(dim)));
    for (const auto& q : quadrics) CHECK(stab.contains(rho(q)));
    CHECK(is_bracket_closed(stab.basis).closed);
  }
}

TEST_CASE("rho of the quadric space is bracket-closed across the catalog") {
  for (const auto& entry : catalog()) {
    if (entry.name == "rnc-control") continue;  // not Lagrangian: exempt
    if (entry.name == "xinv-4" || entry.name == "xinv-5" ||
        entry.name == "xinv-skew-6")
      continue;  // covered in the large-family case
    ParamVariety x = entry.builder();
    const Index dim = x.ambient().dim();
    auto quadrics = interpolate_quadrics(x, dim * (dim + 1), 0);
    std::vector<RatMatrix> images;
    for (const auto& q : quadrics) {
      CHECK(in_sp(rho(q), x.ambient()));
      images.push_back(rho(q));
    }
    CHECK(is_bracket_closed(images).closed);
  }
}

TEST_CASE("large families: quadric counts, closure and stabilizers" *
          doctest::timeout(600)) {
  {
    // the 15-dimensional spinor family: 30 + 36 quadrics, aut of dim 66
    ParamVariety x = build_catalog("xinv-4");
    auto quadrics = interpolate_quadrics(x, 32 * 33, 0);
    CHECK(quadrics.size() == 66);
    std::vector<RatMatrix> images;
    for (const auto& q : quadrics) images.push_back(rho(q));
    CHECK(is_bracket_closed(images).closed);
    StabilizerAlgebra stab = stabilizer_algebra(x, 67, 1);
    CHECK(stab.dim() == 67);
    for (const auto& g : images) CHECK(stab.contains(g));
  }
  {
    // the skew 6x6 family, a hyperplane section of the spinor variety
    ParamVariety x = build_catalog("xinv-skew-6");
    auto quadrics = interpolate_quadrics(x, 30 * 31, 0);
    std::vector<RatMatrix> images;
    for (const auto& q : quadrics) images.push_back(rho(q));
    CHECK(is_bracket_closed(images).closed);
    StabilizerAlgebra stab = stabilizer_algebra(x, 65, 1);
    CHECK(stab.dim() == static_cast<Index>(quadrics.size()) + 1);
  }
  {
    // the singular 5x5 family: quadric part is exactly the ambient
    // quadric-locus span, 2 m^2 - 2 = 48
    ParamVariety x = build_catalog("xinv-5");
    auto quadrics = interpolate_quadrics(x, 50 * 51, 0);
    CHECK(quadrics.size() == 48);
    std::vector<RatMatrix> images;
    for (const auto& q : quadrics) images.push_back(rho(q));
    CHECK(is_bracket_closed(images).closed);
  }
}

TEST_CASE("nondegeneracy rank") {
  CHECK(nondegeneracy_rank(build_toric_legendrian({2, 1, 1}), 12, 0) == 6);
  CHECK(nondegeneracy_rank(build_catalog("lagrangian-plane"), 8, 0) == 2);
  // the 2x2 invertible pairs span only a 4-dim subspace of Q^8
  CHECK(nondegeneracy_rank(build_xinv_variety(2), 16, 0) == 4);
}

TEST_CASE("secant probe") {
  ParamVariety toric = build_toric_legendrian({1, 1, 1});
  {
    SecantProbeReport r = secant_probe(toric, sample_point(toric, 9, 0), 0, 0);
    CHECK(r.failures == 0);
    CHECK(r.trials == 0);
  }
  {
    // generic h: no sampled secant line hits it
    RatVector h = vec({Rational(3), ratio(1, 2), Rational(-2), Rational(1),
                       Rational(5), ratio(-2, 3)});
    SecantProbeReport r = secant_probe(toric, h, 50, 4);
    CHECK(r.failures == 0);
    CHECK(r.skipped < 50);
  }
  {
    // a line: every constrained pair spans the plane containing h, so the
    // midpoint of two section points is always on a sampled secant
    LaurentMap line = {LaurentPoly::variable(2, 0),
                       LaurentPoly::variable(2, 0) * LaurentPoly::variable(2, 1),
                       LaurentPoly(2), LaurentPoly(2)};
    ParamVariety x(SymplecticSpace::standard(2), 2, std::move(line), "line");
    CHECK(legendrian_check(x, 5, 0).pass());
    RatVector p1 = sample_point(x, 11, 0);
    RatVector p2 = sample_point(x, 11, 1);
    RatVector h = (p1 + p2) / Rational(2);
    SecantProbeReport r = secant_probe(x, h, 10, 0);
    CHECK(r.failures >= 1);
  }
}

TEST_CASE("variety invariants are enforced") {
  CHECK_THROWS_AS(ParamVariety(SymplecticSpace::standard(2), 1, LaurentMap{}, "bad"),
                  SizeMismatch);
  LaurentMap too_many(4, LaurentPoly(3));
  CHECK_THROWS_AS(ParamVariety(SymplecticSpace::standard(2), 3, std::move(too_many), "bad"),
                  SizeMismatch);
}
