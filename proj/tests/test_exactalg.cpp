#include <doctest.h>

#include <legkit/laurent.hpp>
#include <legkit/matrix.hpp>
#include <legkit/modkernel.hpp>
#include <legkit/pfaffian.hpp>
#include <legkit/rng.hpp>

using namespace legkit;

namespace {

RatMatrix make(Index r, Index c, std::initializer_list<long long> vals) {
  RatMatrix m(r, c);
  auto it = vals.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Rational(*it++);
  return m;
}

RatMatrix random_matrix(Index r, Index c, std::uint64_t seed) {
  RatMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      m(i, j) = small_rational(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  return m;
}

RatMatrix random_skew(Index n, std::uint64_t seed) {
  RatMatrix m = rat_zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      m(i, j) = small_rational(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
      m(j, i) = -m(i, j);
    }
  return m;
}

}  // namespace

TEST_CASE("rationals stay canonical") {
  CHECK(ratio(4, 6) == ratio(2, 3));
  CHECK(denominator(ratio(-3, -9)) == 3);
  CHECK(ratio(-3, -9) == ratio(1, 3));
  CHECK(to_string(ratio(7, 1)) == "7");
  CHECK(to_string(ratio(-7, 3)) == "-7/3");
  CHECK(parse_rational("22/7") == ratio(22, 7));
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  Rational z = ratio(1, 3) - ratio(1, 3);
  CHECK(denominator(z) == 1);
  CHECK(pow_int(ratio(1, 2), -3) == Rational(8));
  CHECK(pow_int(Rational(5), 0) == Rational(1));
}

TEST_CASE("kernel bases") {
  {
    RatMatrix k = mat_kernel(make(2, 2, {1, 2, 2, 4}));
    REQUIRE(k.cols() == 1);
    // spans (-2, 1)
    CHECK(k(0, 0) * Rational(1) == k(1, 0) * Rational(-2));
  }
  CHECK(mat_kernel(rat_identity(3)).cols() == 0);
  CHECK(mat_kernel(make(1, 3, {1, 1, 1})).cols() == 2);

  // rank-nullity and exact annihilation on random matrices
  for (std::uint64_t s = 0; s < 12; ++s) {
    RatMatrix m = random_matrix(4 + (s % 3), 5, s);
    RatMatrix k = mat_kernel(m);
    CHECK(rank(m) + k.cols() == m.cols());
    CHECK(RatMatrix(m * k).isZero(0));
    // canonical form: re-deriving the basis from itself is stable
    if (k.cols() > 0) CHECK(column_space_basis(k) == k);
  }
}

TEST_CASE("modular kernel engine reproduces the direct nullspace") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index rows = 3 + static_cast<Index>(s % 4);
    const Index cols = 5 + static_cast<Index>(s % 3);
    RatMatrix m = random_matrix(rows, cols, 100 + s);
    if (s % 3 == 0) m.row(0) = m.row(rows - 1);               // force rank drops
    if (s % 4 == 0) m.col(1) = Rational(2) * m.col(cols - 1);
    CHECK(mat_kernel_fast(m) == mat_kernel(m));
  }
  // identity and zero edge cases
  CHECK(mat_kernel_fast(rat_identity(4)).cols() == 0);
  CHECK(mat_kernel_fast(rat_zero(3, 4)) == mat_kernel(rat_zero(3, 4)));
}

TEST_CASE("determinant, inverse, solve") {
  RatMatrix a = make(3, 3, {2, 1, 0, 1, 3, 1, 0, 1, 1});
  CHECK(det(a) == Rational(3));
  CHECK(RatMatrix(a * inverse(a)) == rat_identity(3));
  RatVector b(3);
  b << Rational(1), Rational(0), Rational(2);
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(RatVector(a * *x) == b);
  CHECK(!solve(make(2, 2, {1, 2, 2, 4}), [] {
          RatVector v(2);
          v << Rational(1), Rational(0);
          return v;
        }()).has_value());
}

TEST_CASE("laurent evaluation") {
  LaurentPoly f = LaurentPoly::monomial(2, {2, -1}, Rational(1));
  RatVector t(2);
  t << Rational(2), Rational(3);
  CHECK(f.eval(t) == ratio(4, 3));

  CHECK(LaurentPoly::constant(2, Rational(5)).eval(t) == Rational(5));

  LaurentPoly g = LaurentPoly::monomial(1, {-3}, Rational(1));
  RatVector half(1);
  half << ratio(1, 2);
  CHECK(g.eval(half) == Rational(8));

  RatVector zero(1);
  zero << Rational(0);
  CHECK_THROWS_AS(g.eval(zero), ZeroParameter);
}

TEST_CASE("laurent jacobian") {
  {
    LaurentMap f = {LaurentPoly::monomial(2, {2, -1}, Rational(1))};
    RatVector t(2);
    t << Rational(1), Rational(1);
    RatMatrix j = laurent_jacobian(f, t);
    CHECK(j(0, 0) == Rational(2));
    CHECK(j(0, 1) == Rational(-1));
  }
  {
    LaurentMap f = {LaurentPoly::monomial(1, {-3}, Rational(1))};
    RatVector t(1);
    t << Rational(1);
    CHECK(laurent_jacobian(f, t)(0, 0) == Rational(-3));
  }
  {
    // differentiating the six monomials of the (2,1,1) torus map by hand:
    // columns at t = (1,1) are the classical tangent vectors
    LaurentMap f = {
        LaurentPoly::monomial(2, {1, 1}, Rational(-2)),
        LaurentPoly::monomial(2, {2, 0}, Rational(1)),
        LaurentPoly::monomial(2, {0, 2}, Rational(1)),
        LaurentPoly::monomial(2, {-1, -1}, Rational(1)),
        LaurentPoly::monomial(2, {-2, 0}, Rational(1)),
        LaurentPoly::monomial(2, {0, -2}, Rational(1)),
    };
    RatVector t(2);
    t << Rational(1), Rational(1);
    RatMatrix j = laurent_jacobian(f, t);
    RatMatrix expect = make(6, 2, {-2, -2, 2, 0, 0, 2, -1, -1, -2, 0, 0, -2});
    CHECK(j == expect);
  }
}

TEST_CASE("jacobian agrees with symmetric differences to first order") {
  // r(h) = (f(t+h e_j) - f(t-h e_j)) / 2h - df/dt_j is O(h^2)
  LaurentPoly f(2);
  f += LaurentPoly::monomial(2, {3, 0}, ratio(1, 2));
  f += LaurentPoly::monomial(2, {1, -2}, Rational(2));
  f += LaurentPoly::monomial(2, {-1, 1}, ratio(-3, 5));
  RatVector t(2);
  t << ratio(3, 2), ratio(-2, 3);
  for (int j = 0; j < 2; ++j) {
    const Rational dj = f.derivative(j).eval(t);
    auto residual = [&](const Rational& h) {
      RatVector tp = t, tm = t;
      tp(j) += h;
      tm(j) -= h;
      return (f.eval(tp) - f.eval(tm)) / (2 * h) - dj;
    };
    const Rational r1 = residual(ratio(1, 64));
    const Rational r2 = residual(ratio(1, 128));
    const Rational r3 = residual(ratio(1, 256));
    CHECK(abs(r2) * 2 <= abs(r1));  // shrinks at least quadratically
    CHECK(abs(r3) * 2 <= abs(r2));
  }
}

TEST_CASE("pfaffian") {
  {
    RatMatrix m = rat_zero(2, 2);
    m(0, 1) = ratio(7, 3);
    m(1, 0) = -m(0, 1);
    CHECK(pfaffian(m) == ratio(7, 3));
  }
  {
    // classical 4x4 expansion
    RatMatrix g = random_skew(4, 99);
    const Rational expect =
        g(0, 1) * g(2, 3) - g(0, 2) * g(1, 3) + g(0, 3) * g(1, 2);
    CHECK(pfaffian(g) == expect);
  }
  {
    // normalization on the standard block form
    RatMatrix j = rat_zero(6, 6);
    for (Index i = 0; i < 6; i += 2) {
      j(i, i + 1) = 1;
      j(i + 1, i) = -1;
    }
    CHECK(pfaffian(j) == Rational(1));
  }
  for (std::uint64_t s = 0; s < 50; ++s) {
    RatMatrix g = random_skew(6, 1000 + s);
    const Rational pf = pfaffian(g);
    CHECK(pf * pf == det(g));
  }
  CHECK_THROWS_AS(pfaffian(rat_identity(2)), NotSkew);
  CHECK_THROWS_AS(pfaffian(rat_zero(3, 3)), OddSize);

  // symbolic expansion agrees with the elimination pfaffian
  {
    const int nv = 15;
    std::vector<std::vector<LaurentPoly>> sym(
        6, std::vector<LaurentPoly>(6, LaurentPoly(nv)));
    int next = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        sym[i][j] = LaurentPoly::variable(nv, next);
        sym[j][i] = -LaurentPoly::variable(nv, next);
        ++next;
      }
    LaurentPoly pf_sym = pfaffian_symbolic(sym);
    RatMatrix g = random_skew(6, 4242);
    RatVector vals(nv);
    next = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) vals(next++) = g(i, j);
    CHECK(pf_sym.eval(vals) == pfaffian(g));
  }
}

TEST_CASE("laurent ring basics") {
  LaurentPoly x = LaurentPoly::variable(2, 0);
  LaurentPoly y = LaurentPoly::variable(2, 1);
  CHECK(((x + y) * (x - y)) == (x * x - y * y));
  CHECK((x - x).is_zero());
  LaurentPoly p = x * x * y - Rational(3) * y;
  CHECK(p.derivative(0) == Rational(2) * x * y);
  CHECK(p.substitute_value(1, Rational(2)) == Rational(2) * x * x - LaurentPoly::constant(2, Rational(6)));
  // shift: p(x+1, y) has the right constant term p(1, 0) = 0... p(1,2) check
  LaurentPoly shifted = p.shift([] {
    RatVector c(2);
    c << Rational(1), Rational(2);
    return c;
  }());
  RatVector at(2);
  at << Rational(2), Rational(1);
  // shifted(2,1) = p(3,3)
  RatVector orig(2);
  orig << Rational(3), Rational(3);
  CHECK(shifted.eval(at) == p.eval(orig));
}
