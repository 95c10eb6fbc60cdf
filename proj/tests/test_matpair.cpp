#include <doctest.h>

#include <legkit/catalog.hpp>
#include <legkit/matpair.hpp>
#include <legkit/rng.hpp>

using namespace legkit;

namespace {

RatMatrix random_square(Index n, std::uint64_t seed) {
  RatMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = small_rational(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  return m;
}

PairPoint random_pair(const MatrixPairSpec& spec, std::uint64_t seed) {
  RatVector v(spec.ambient().dim());
  for (Index i = 0; i < v.size(); ++i) v(i) = small_rational(seed, static_cast<std::uint64_t>(i), 7);
  return spec.unflatten(v);
}

Rational trace_form(const PairPoint& p, const PairPoint& q) {
  return ((p.A * q.B.transpose() - q.A * p.B.transpose()).trace());
}

}  // namespace

TEST_CASE("pair spaces realize the trace form") {
  {
    MatrixPairSpec spec(2, PairFlavor::Full);
    CHECK(spec.ambient().dim() == 8);
    CHECK(spec.ambient().is_standard());
    PairPoint id_zero{rat_identity(2), rat_zero(2, 2)};
    PairPoint zero_id{rat_zero(2, 2), rat_identity(2)};
    CHECK(spec.omega(id_zero, zero_id) == Rational(2));  // tr(Id_m)
    PairPoint p = random_pair(spec, 3);
    CHECK(spec.omega(p, p) == 0);
  }
  for (auto flavor : {PairFlavor::Full, PairFlavor::Symmetric, PairFlavor::Skew}) {
    for (int m : {2, 3, 4}) {
      MatrixPairSpec spec(m, flavor);
      for (std::uint64_t s = 0; s < 4; ++s) {
        PairPoint p = random_pair(spec, 10 + s), q = random_pair(spec, 20 + s);
        CHECK(spec.omega(p, q) == trace_form(p, q));
      }
    }
  }
  CHECK(build_matpair_space(3, PairFlavor::Symmetric).ambient().dim() == 12);
  CHECK(build_matpair_space(4, PairFlavor::Skew).ambient().dim() == 12);
}

TEST_CASE("membership in the cointegrable quadric locus") {
  {
    PairPoint p{rat_identity(3), rat_identity(3)};
    auto r = y_membership(p);
    CHECK(r.member);
    CHECK(*r.lambda_sq == Rational(1));
  }
  {
    RatMatrix a = rat_zero(3, 3);
    a(2, 2) = 1;  // the distinguished point (E_mm, 0)
    auto r = y_membership({a, rat_zero(3, 3)});
    CHECK(r.member);
    CHECK(*r.lambda_sq == Rational(0));
  }
  {
    RatMatrix e11 = rat_zero(2, 2);
    e11(0, 0) = 1;
    auto r = y_membership({rat_identity(2), e11});
    CHECK(!r.member);
    CHECK(r.violated_quadrics > 0);
  }
  // the quadric families vanish exactly on members, including scaled ones
  for (int m : {2, 3}) {
    auto quadrics = y_quadrics(m);
    CHECK(quadrics.size() == static_cast<size_t>(2 * m * m - 2));
    MatrixPairSpec spec(m, PairFlavor::Full);
    RatMatrix g = random_unimodular(m, 5, 1);
    PairPoint p = apply_psi(ratio(3, 2), xinv_point(g));
    RatVector flat = spec.flatten(p);
    for (const auto& q : quadrics) CHECK(q.eval(flat) == 0);
  }
}

TEST_CASE("points over invertible matrices satisfy every equation family") {
  {
    PairPoint p = xinv_point(rat_identity(3));
    CHECK(p.B == rat_identity(3));
    CHECK(equation_battery(p).all());
  }
  {
    RatMatrix g = rat_zero(3, 3);
    g(0, 0) = 2;
    g(1, 1) = 1;
    g(2, 2) = ratio(1, 2);
    PairPoint p = xinv_point(g);
    CHECK(p.B(0, 0) == ratio(1, 2));
    CHECK(p.B(2, 2) == Rational(2));
    CHECK(equation_battery(p).all());
  }
  for (int m : {2, 3, 4, 5}) {
    RatMatrix g = random_unimodular(m, 40, static_cast<std::uint64_t>(m));
    CHECK(equation_battery(xinv_point(g)).all());
  }
  {
    // m = 2: the four linear relations a_ij = +- b_i'j'
    RatMatrix g = random_unimodular(2, 41, 0);
    PairPoint p = xinv_point(g);
    CHECK(p.B(0, 0) == p.A(1, 1));
    CHECK(p.B(0, 1) == -p.A(1, 0));
    CHECK(p.B(1, 0) == -p.A(0, 1));
    CHECK(p.B(1, 1) == p.A(0, 0));
  }
  CHECK_THROWS_AS(xinv_point(Rational(2) * rat_identity(2)), NotUnimodular);
  CHECK_THROWS_AS(xinv_point(random_square(3, 3), PairFlavor::Symmetric),
                  FlavorViolation);

  // symmetric flavor
  {
    RatMatrix a = rat_zero(2, 2);
    a(0, 0) = 2;
    a(0, 1) = a(1, 0) = 1;
    a(1, 1) = 1;  // det 1, symmetric
    PairPoint p = xinv_point(a, PairFlavor::Symmetric);
    CHECK(RatMatrix(p.A * p.B) == rat_identity(2));
    CHECK(p.B.transpose() == p.B);
  }
  // skew flavor
  {
    RatMatrix a = rat_zero(4, 4);
    a(0, 1) = 1;
    a(1, 0) = -1;
    a(2, 3) = 1;
    a(3, 2) = -1;
    PairPoint p = xinv_point(a, PairFlavor::Skew);
    CHECK(RatMatrix(p.A * p.B) == -rat_identity(4));
    CHECK(equation_battery(p).y_ok);
  }
}

TEST_CASE("degenerate pair membership") {
  RatMatrix e33 = rat_zero(3, 3);
  e33(2, 2) = 1;
  CHECK(xdeg_membership({e33, rat_zero(3, 3)}, 1));
  CHECK(xdeg_membership({rat_identity(3), rat_zero(3, 3)}, 3));
  CHECK(!xdeg_membership({rat_identity(3), rat_zero(3, 3)}, 1));
  // sampled points of the chart parametrizations are members
  for (auto [m, k] : {std::pair<int, int>{2, 1}, {3, 1}, {3, 2}}) {
    ParamVariety x = build_xdeg_variety(m, k);
    MatrixPairSpec spec(m, PairFlavor::Full);
    for (std::uint64_t i = 0; i < 4; ++i)
      CHECK(xdeg_membership(spec.unflatten(sample_point(x, 60, i)), k));
  }
  {
    // Segre parametrization lands in the m=2, k=1 family
    ParamVariety segre = build_segre_xdeg21();
    MatrixPairSpec spec(2, PairFlavor::Full);
    for (std::uint64_t i = 0; i < 4; ++i)
      CHECK(xdeg_membership(spec.unflatten(sample_point(segre, 61, i)), 1));
  }
}

TEST_CASE("complementary minor identities") {
  {
    // removing row/col 1 (1-based) of A leaves det A_11 = b_11
    RatMatrix g = random_unimodular(3, 70, 0);
    CHECK(minor_identity_check(g, {0}, {0}));
    PairPoint p = xinv_point(g);
    CHECK(det(remove_rows_cols(p.A, {0}, {0})) == p.B(0, 0));
  }
  {
    // k = 0: det A = det B = 1
    RatMatrix g = random_unimodular(4, 71, 0);
    CHECK(minor_identity_check(g, {}, {}));
  }
  // random sets across sizes
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    const int m = 2 + static_cast<int>(trial % 4);
    RatMatrix g = random_unimodular(m, 72, trial);
    const int k = static_cast<int>(small_int(73, trial, 0, 0, m));
    std::vector<int> I, J;
    detail::subsets_of_size(m, k, [&](const std::vector<int>& s) {
      if (I.empty() && small_int(74, trial, static_cast<std::uint64_t>(s.empty() ? 0 : s[0]), 0, 2) == 1)
        I = s;
    });
    detail::subsets_of_size(m, k, [&](const std::vector<int>& s) { J = s; });
    if (I.empty()) detail::subsets_of_size(m, k, [&](const std::vector<int>& s) { if (I.empty()) I = s; });
    CHECK(minor_identity_check(g, I, J));
  }
  CHECK_THROWS_AS(minor_identity_check(Rational(2) * rat_identity(2), {0}, {0}),
                  SingularInput);
}

TEST_CASE("group action and scaling invariance") {
  MatrixPairSpec spec(3, PairFlavor::Full);
  for (std::uint64_t s = 0; s < 10; ++s) {
    UnimodularPair gh = random_unimodular_pair(3, 80, s);
    PairPoint u = random_pair(spec, 100 + s), v = random_pair(spec, 200 + s);
    CHECK(spec.omega(apply_pair_action(gh, u), apply_pair_action(gh, v)) ==
          spec.omega(u, v));
    const Rational mu = small_rational(81, s, 0);
    CHECK(spec.omega(apply_psi(mu, u), apply_psi(mu, v)) == spec.omega(u, v));
    // the action preserves membership in the quadric locus
    PairPoint member = apply_psi(mu, xinv_point(random_unimodular(3, 82, s)));
    CHECK(y_membership(member).member);
    CHECK(y_membership(apply_pair_action(gh, member)).member);
  }
}

TEST_CASE("tangent space at the identity pair is Lagrangian of dimension m^2") {
  for (int m : {2, 3, 4}) {
    MatrixPairSpec spec(m, PairFlavor::Full);
    PairPoint id{rat_identity(m), rat_identity(m)};
    RatMatrix basis(spec.ambient().dim(), 1 + 2 * (m * m - 1));
    basis.col(0) = spec.flatten(id);
    Index c = 1;
    // traceless basis elements g act by (g^T, -g), h by (h, -h^T)
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) {
        if (i == m - 1 && j == m - 1) continue;
        RatMatrix e = rat_zero(m, m);
        e(i, j) = 1;
        if (i == j) e(m - 1, m - 1) = -1;
        basis.col(c++) = spec.flatten({e.transpose(), -e});
        basis.col(c++) = spec.flatten({e, -e.transpose()});
        --c;  // keep both? no: columns written twice; rewind fixed below
        ++c;
      }
    RatMatrix reduced = column_space_basis(basis);
    CHECK(reduced.cols() == m * m);
    RatMatrix gram = reduced.transpose() * spec.ambient().J() * reduced;
    CHECK(gram.isZero(0));
  }
}

TEST_CASE("chart parametrizations of the invertible families are Lagrangian") {
  CHECK(legendrian_check(build_xinv_variety(2), 6, 0).pass());
  CHECK(legendrian_check(build_xinv_variety(3), 6, 0).pass());
  CHECK(legendrian_check(build_xinv_variety(3, PairFlavor::Symmetric), 6, 0).pass());
  CHECK(legendrian_check(build_xinv_variety(4, PairFlavor::Skew), 6, 0).pass());
}

TEST_CASE("degenerate charts: identically zero products and Lagrangian cones") {
  for (auto [m, k] : {std::pair<int, int>{2, 1}, {3, 1}, {3, 2}}) {
    ParamVariety x = build_xdeg_variety(m, k);
    // A B^T = 0 and B^T A = 0 hold as polynomial identities: check on many
    // exact samples with independent entries
    MatrixPairSpec spec(m, PairFlavor::Full);
    for (std::uint64_t i = 0; i < 3; ++i) {
      PairPoint p = spec.unflatten(sample_point(x, 90, i));
      CHECK(RatMatrix(p.A * p.B.transpose()).isZero(0));
      CHECK(RatMatrix(p.B.transpose() * p.A).isZero(0));
      CHECK(rank(p.A) == k);
      CHECK(rank(p.B) == m - k);
    }
    CHECK(legendrian_check(x, 5, 0).pass());
  }
  // generic cone tangent dimension equals m^2, the orbit dimension plus
  // the cone direction
  for (auto [m, k] : {std::pair<int, int>{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}}) {
    ParamVariety x = build_xdeg_variety(m, k);
    CHECK(cone_tangent_space(x, sample_params(x, 91, 0)).dim() == m * m);
  }
  CHECK(legendrian_check(build_segre_xdeg21(), 8, 0).pass());
}

TEST_CASE("lowest parts of tangent-cone generators") {
  {
    // the classical cusp: y^2 - x^3 at the origin
    LaurentPoly f = LaurentPoly::monomial(2, {0, 2}, Rational(1)) -
                    LaurentPoly::monomial(2, {3, 0}, Rational(1));
    auto lows = tangent_cone_lowest({f}, -1, RatVector::Zero(2));
    REQUIRE(lows.size() == 1);
    CHECK(lows[0] == LaurentPoly::monomial(2, {0, 2}, Rational(1)));
    CHECK(!all_linear(lows, 2));
  }
  {
    // center must lie on the zero set
    LaurentPoly f = LaurentPoly::monomial(1, {2}, Rational(1)) -
                    LaurentPoly::constant(1, Rational(3));
    CHECK_THROWS_AS(tangent_cone_lowest({f}, -1, RatVector::Zero(1)),
                    CenterNotOnVariety);
  }
  // smoothness signals across the small degenerate families
  CHECK(xdeg_smooth_signal(2, 0));
  CHECK(xdeg_smooth_signal(2, 1));
  CHECK(xdeg_smooth_signal(2, 2));
  CHECK(xdeg_smooth_signal(3, 0));
  CHECK(!xdeg_smooth_signal(3, 1));
  CHECK(!xdeg_smooth_signal(3, 2));
  CHECK(xdeg_smooth_signal(3, 3));
}

TEST_CASE("spinor chart identity") {
  {
    // g = 0 maps to the distinguished degenerate point
    auto pf = [](const std::vector<std::vector<Rational>>& s) {
      RatMatrix mm(static_cast<Index>(s.size()), static_cast<Index>(s.size()));
      for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = 0; j < s.size(); ++j) mm(static_cast<Index>(i), static_cast<Index>(j)) = s[i][j];
      return pfaffian(mm);
    };
    std::vector<std::vector<Rational>> zero(6, std::vector<Rational>(6, Rational(0)));
    auto [A, B] = spinor_chart_pair<Rational>(
        zero, pf, [](const Rational& r) { return -r; }, [] { return Rational(1); });
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(B[i][j] == 0);
        // the image is the distinguished point [E_44, 0] up to scale
        CHECK(A[i][j] == ((i == 3 && j == 3) ? Rational(-1) : Rational(0)));
      }
  }
  CHECK(s6_identity_check(5, 0).pass);
  CHECK(s6_identity_check(1, 0, /*symbolic=*/true).pass);
}

TEST_CASE("singularity probe") {
  {
    auto probe = singularity_probe(5, 0);
    CHECK(probe.curve_certified);
    CHECK(probe.in_orbit);
    CHECK(rank(probe.direction.A) == 0);
    CHECK(rank(probe.direction.B) == 4);
  }
  {
    auto probe = singularity_probe(5, 1);
    CHECK(probe.curve_certified);
    CHECK(probe.in_orbit);
    CHECK(rank(probe.direction.A) == 1);
    CHECK(rank(probe.direction.B) == 3);
  }
  {
    auto probe = singularity_probe(4, 0);
    CHECK(probe.curve_certified);
    CHECK(probe.in_orbit);
  }
  CHECK_THROWS_AS(singularity_probe(3, 0), InvalidRange);
  CHECK_THROWS_AS(singularity_probe(4, 1), InvalidRange);
  CHECK_THROWS_AS(singularity_probe(5, 2), InvalidRange);
}
