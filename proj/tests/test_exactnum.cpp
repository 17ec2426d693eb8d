#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orbitcensus/exactnum/bipoly.hpp"
#include "orbitcensus/exactnum/nfelem.hpp"
#include "orbitcensus/exactnum/roots.hpp"

using namespace orbitcensus;

namespace {

UniPoly random_poly(std::mt19937& rng, int deg, int range = 9) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Rat> cs;
  for (int i = 0; i <= deg; ++i) cs.emplace_back(d(rng));
  if (cs.back() == 0) cs.back() = 1;
  return UniPoly(cs);
}

UniPoly from_roots(const std::vector<Rat>& roots, const Rat& lead) {
  UniPoly p(lead);
  for (const auto& r : roots) p = p * UniPoly({-r, Rat(1)});
  return p;
}

// Plain Gaussian elimination on the Sylvester matrix.
Rat sylvester_det(const UniPoly& f, const UniPoly& g) {
  const long m = f.degree(), n = g.degree();
  const long N = m + n;
  std::vector<std::vector<Rat>> a(N, std::vector<Rat>(N, Rat(0)));
  for (long i = 0; i < n; ++i)
    for (long k = 0; k <= m; ++k) a[i][i + k] = f.coeff(m - k);
  for (long i = 0; i < m; ++i)
    for (long k = 0; k <= n; ++k) a[n + i][i + k] = g.coeff(n - k);
  Rat det = 1;
  for (long c = 0; c < N; ++c) {
    long p = c;
    while (p < N && a[p][c] == 0) ++p;
    if (p == N) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (long r = c + 1; r < N; ++r) {
      Rat f2 = a[r][c] / a[c][c];
      for (long k = c; k < N; ++k) a[r][k] -= f2 * a[c][k];
    }
  }
  return det;
}

// A double is only correct to an ulp, so allow that much slack.
bool near(const Interval& x, double v) {
  double slack = 4e-16 * std::fabs(v);
  return x.lo() - slack <= v && v <= x.hi() + slack;
}

long double bisect_composition_root(const std::vector<long>& parts) {
  auto g = [&](long double z) {
    long double s = 1;
    for (long t : parts) s -= std::pow(z, static_cast<long double>(t));
    return s;
  };
  long double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("rational parsing and rounding") {
  CHECK(parse_rat("6/4") == Rat(3, 2));
  CHECK(parse_rat("-1.25") == Rat(-5, 4));
  CHECK(parse_rat("7") == Rat(7));
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CHECK_THROWS_AS(parse_rat("abc"), InputError);
  CHECK(parse_int_expr("1e20") == Int("100000000000000000000"));
  CHECK(parse_int_expr("10^9") == Int(1000000000));
  CHECK(floor_rat(Rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(-7, 2)) == -3);
  CHECK(floor_rat(Rat(6, 3)) == 2);
  CHECK(gcd_all({Int(12), Int(18), Int(30)}) == 6);
  CHECK(ceil_log2(Rat(1)) == 0);
  CHECK(ceil_log2(Rat(5)) == 3);
  CHECK(ceil_log2(Rat(1, 3)) == -1);
  CHECK(decimal_digits(Int(0)) == 1);
  CHECK(decimal_digits(Int(-999)) == 3);
}

TEST_CASE("division with remainder reconstructs the dividend") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    UniPoly a = random_poly(rng, 2 + trial % 7);
    UniPoly b = random_poly(rng, 1 + trial % 4);
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd divides both and recovers a planted common factor") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    UniPoly c = random_poly(rng, 1 + trial % 3);
    UniPoly a = c * random_poly(rng, 2);
    UniPoly b = c * random_poly(rng, 3);
    UniPoly g = gcd(a, b);
    CHECK(exact_divide(a, g).has_value());
    CHECK(exact_divide(b, g).has_value());
    CHECK(exact_divide(g, c.monic()).has_value());
  }
}

TEST_CASE("resultant agrees with the Sylvester determinant and the root product") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    UniPoly f = random_poly(rng, 1 + trial % 5);
    UniPoly g = random_poly(rng, 1 + (trial / 5) % 4);
    CHECK(resultant(f, g) == sylvester_det(f, g));
  }
  std::vector<Rat> roots{Rat(1, 2), Rat(-3), Rat(5, 7)};
  UniPoly f = from_roots(roots, Rat(2));
  UniPoly g = parse_poly("x^2 + x - 4");
  Rat expect = 4;  // lc(f)^deg g
  for (const auto& r : roots) expect *= g.eval(r);
  CHECK(resultant(f, g) == expect);
}

TEST_CASE("discriminant of a quadratic and squarefree parts") {
  CHECK(discriminant(parse_poly("3*x^2 + 5*x - 2")) == Rat(25 + 24));
  UniPoly p = from_roots({Rat(1), Rat(1), Rat(2)}, Rat(1));
  CHECK(!is_squarefree(p));
  CHECK(squarefree_part(p).monic() == from_roots({Rat(1), Rat(2)}, Rat(1)));
  CHECK(discriminant(p) == 0);
}

TEST_CASE("composition and shift") {
  UniPoly f = parse_poly("x^2 + 1");
  UniPoly g = parse_poly("2*x - 3");
  CHECK(f.compose(g) == parse_poly("4*x^2 - 12*x + 10"));
  CHECK(f.shift(Rat(1)) == parse_poly("x^2 + 2*x + 2"));
  CHECK(to_string(parse_poly("x^3 - 3*x")) == "x^3 - 3*x");
}

TEST_CASE("interval enclosures contain the true values") {
  Interval third(Rat(1, 3));
  CHECK(third.contains(Rat(1, 3)));
  Interval l2 = log_int(Int(2));
  CHECK(near(l2, 0.6931471805599453));
  CHECK(l2.width() < 1e-60);
  Interval e = exp(l2);
  CHECK(e.contains(Rat(2)));
  Interval le = log_enclosure(Int(3), Rat(1, 1000000));
  CHECK(le.width() < 1e-6);
  CHECK(near(le, std::log(3.0)));
  CHECK(certainly_less(Interval(Rat(1, 3)), Interval(Rat(1, 2))));
  CHECK(!certainly_less(Interval(Rat(1, 3)), Interval(Rat(1, 3))));
  CHECK_THROWS(log(Interval(Rat(-1), Rat(1))));
}

TEST_CASE("Sturm counts match known real roots") {
  UniPoly p = from_roots({Rat(1), Rat(2), Rat(3)}, Rat(1)) * parse_poly("x^2 + 1");
  auto seq = sturm_sequence(p);
  CHECK(sturm_count(seq, Rat(0), Rat(10)) == 3);
  CHECK(sturm_count(seq, Rat(3, 2), Rat(5, 2)) == 1);
  auto roots = isolate_real_roots(p, Rat(-10), Rat(10));
  REQUIRE(roots.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(roots[i].contains(Rat(static_cast<long>(i) + 1)));
  RootEnclosure r = refine_root(parse_poly("x^2 - 2"), RootEnclosure{Rat(1), Rat(2)}, Rat(1, 1000000000));
  CHECK(r.width() <= Rat(1, 1000000000));
  CHECK(near(r.interval(), std::sqrt(2.0)));
}

TEST_CASE("dominant composition roots against bisection") {
  for (const std::vector<long>& parts : {std::vector<long>{2, 3}, {1, 2}, {1, 3, 5}, {2, 5}, {3, 4, 6}}) {
    RootEnclosure r = dominant_root(parts, Rat(1, Int(1) << 50));
    long double oracle = bisect_composition_root(parts);
    CHECK(std::fabs(r.interval().mid() - static_cast<double>(oracle)) < 1e-13);
  }
  RootEnclosure golden = dominant_root(std::vector<long>{1, 2});
  CHECK(near(golden.interval(), (std::sqrt(5.0) - 1) / 2));
  CHECK(composition_denominator({2, 3}) == parse_poly("1 - x^2 - x^3"));
}

TEST_CASE("cyclotomic quotient ring arithmetic") {
  auto mod = cyclotomic_modulus(3);
  CHECK(mod == cyclotomic_modulus(3));
  NFElem w = NFElem::generator(mod);
  CHECK(w.pow(3) == NFElem(1));
  CHECK(w * w + w + NFElem(1) == NFElem(0));
  CHECK(w.inverse() == w * w);
  CHECK(cyclotomic(12) == parse_poly("x^4 - x^2 + 1"));
  CHECK(euler_phi(12) == 4);
  std::mt19937 rng(3);
  auto mod7 = cyclotomic_modulus(7);
  for (int trial = 0; trial < 30; ++trial) {
    NFElem a(random_poly(rng, 5), mod7);
    if (a.is_zero()) continue;
    CHECK(a * a.inverse() == NFElem(1));
  }
  NFElem i4 = NFElem::generator(cyclotomic_modulus(4));
  CHECK_THROWS_AS(i4 + w, RingMismatchError);
  CHECK((i4 * i4).as_rational() == Rat(-1));
}

TEST_CASE("bivariate polynomials") {
  using BP = BiPoly<Rat>;
  BP X = BP::X(), Y = BP::Y();
  BP f = X * X - Y * Y;
  auto q = exact_divide(f, X - Y);
  REQUIRE(q.has_value());
  CHECK(*q == X + Y);
  CHECK(!divides(X + Y + BP(Rat(1)), f));
  CHECK(f.swapped() == -f);
  CHECK(f.total_degree() == 2);
  CHECK((X * Y).compose(X + Y, X - Y) == X * X - Y * Y);
  CHECK(f.eval(Rat(3), Rat(2)) == Rat(5));
}
