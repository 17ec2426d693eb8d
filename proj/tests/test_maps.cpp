#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitcensus/maps.hpp"

using namespace orbitcensus;

namespace {

std::vector<EndoMap> sample_maps() {
  return {EndoMap::polynomial(parse_poly("2*x^2"), "phi1"), EndoMap::polynomial(parse_poly("3*x^3 + 1"), "phi2"),
          EndoMap::rational(parse_poly("x^2 + 1"), parse_poly("x"), "psi1"),
          EndoMap::rational(parse_poly("x^3 - 2"), parse_poly("5*x^2 + 1"), "psi2"),
          EndoMap::polynomial(parse_poly("1/7*x^2 - 3/2"), "phi3")};
}

ProjPoint random_point(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::uniform_int_distribution<long> pos(0, bound);
  while (true) {
    long x = d(rng), y = pos(rng);
    if (x == 0 && y == 0) continue;
    return ProjPoint::make(Int(x), Int(y));
  }
}

// Affine evaluation in Q, independent of the homogenized forms.
ProjPoint affine_eval(const EndoMap& phi, const ProjPoint& p) {
  if (p.is_infinity()) return phi.kind() == MapKind::polynomial ? ProjPoint::infinity() : ProjPoint{};
  Rat q = p.affine();
  Rat den = phi.den().eval(q);
  if (den == 0) return ProjPoint::infinity();
  return ProjPoint::from_rat(phi.num().eval(q) / den);
}

}  // namespace

TEST_CASE("projective points are canonical") {
  ProjPoint p = ProjPoint::make(Int(4), Int(-6));
  CHECK(p.x == -2);
  CHECK(p.y == 3);
  CHECK(parse_point("[4:-6]") == p);
  CHECK(parse_point("-2/3") == p);
  CHECK(parse_point("0.5") == ProjPoint::make(Int(1), Int(2)));
  CHECK(parse_point("inf").is_infinity());
  CHECK(ProjPoint::make(Int(-5), Int(0)) == ProjPoint::infinity());
  CHECK_THROWS_AS(ProjPoint::make(Int(0), Int(0)), InputError);
  CHECK_THROWS_AS(parse_point("[1:2"), InputError);
}

TEST_CASE("Weil height") {
  CHECK(height_H(parse_point("-7/3")) == 7);
  CHECK(height_H(ProjPoint::infinity()) == 1);
  WeilHeight w = weil_height(parse_point("1/1000"));
  CHECK(w.H == 1000);
  CHECK(std::fabs(w.h.mid() - std::log(1000.0)) < 1e-12);
}

TEST_CASE("homogenized evaluation matches affine evaluation") {
  std::mt19937_64 rng(1);
  for (const auto& phi : sample_maps()) {
    for (int i = 0; i < 300; ++i) {
      ProjPoint p = random_point(rng, 1000);
      if (p.is_infinity()) continue;
      CHECK(evaluate(phi, p) == affine_eval(phi, p));
    }
  }
  EndoMap psi = EndoMap::rational(parse_poly("x^2 + 1"), parse_poly("x"));
  CHECK(evaluate(psi, ProjPoint::infinity()).is_infinity());
  CHECK(evaluate(psi, parse_point("0")).is_infinity());
  CHECK(evaluate(EndoMap::rational(parse_poly("1"), parse_poly("x^2 + 1")), ProjPoint::infinity()) == parse_point("0"));
}

TEST_CASE("map construction rejects non-morphisms") {
  CHECK_THROWS_AS(EndoMap::polynomial(parse_poly("5")), InputError);
  CHECK_THROWS_AS(EndoMap::rational(parse_poly("x^2 - 1"), parse_poly("x - 1")), InputError);
  CHECK_THROWS_AS(EndoMap::rational(parse_poly("x"), UniPoly()), InputError);
  CHECK_THROWS_AS(set_constants({EndoMap::polynomial(parse_poly("x + 1"))}), PreconditionError);
}

TEST_CASE("functoriality bound holds on random points") {
  std::mt19937_64 rng(2024);
  for (const auto& phi : sample_maps()) {
    Rat C = height_bound(phi);
    Interval Ci(C);
    const long d = phi.degree();
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      ProjPoint p = random_point(rng, 1000000);
      Interval diff = abs(weil_height(evaluate(phi, p)).h - Interval(d) * weil_height(p).h);
      if (certainly_less(Ci, diff)) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("height bound pieces") {
  HeightBoundDetail sq = height_bound_detail(EndoMap::polynomial(parse_poly("x^2")));
  CHECK(sq.C == 0);
  HeightBoundDetail two = height_bound_detail(EndoMap::polynomial(parse_poly("2*x^2")));
  CHECK(two.norm_plus == 2);
  CHECK(two.C >= two.c_plus);
  CHECK(two.C >= two.c_minus);
  CHECK(Interval(two.c_plus).hi() >= std::log(2.0));
  // 2x^2 at P = 1/2 gives 1/2: the height drops by log 2 = 2·log 2 − log 2.
  Interval drop = weil_height(evaluate(EndoMap::polynomial(parse_poly("2*x^2")), parse_point("1/2"))).h;
  CHECK(std::fabs(drop.mid() - std::log(2.0)) < 1e-12);
}

TEST_CASE("set constants") {
  SetConstants c = set_constants({EndoMap::polynomial(parse_poly("2*x^2")), EndoMap::polynomial(parse_poly("3*x^3 + 1"))});
  CHECK(c.dS == 2);
  CHECK(c.per_map.size() == 2);
  CHECK(c.CS == std::max(c.per_map[0], c.per_map[1]));
  CHECK(c.bS == c.CS / Rat(c.dS - 1));
  CHECK(certainly_leq(Interval(Rat(4)), c.BS()));
}

TEST_CASE("canonical height scales under the map") {
  std::mt19937_64 rng(9);
  const Rat tol(1, 10000);
  for (const auto& phi : sample_maps()) {
    for (int i = 0; i < 5; ++i) {
      ProjPoint p = random_point(rng, 50);
      CanonicalHeight a = canonical_height(phi, p, tol);
      CanonicalHeight b = canonical_height(phi, evaluate(phi, p), tol);
      Interval scaled = Interval(phi.degree()) * a.value;
      double slack = (phi.degree() + 1) * tol.get_d();
      CHECK(std::fabs(scaled.mid() - b.value.mid()) <= slack);
    }
  }
  CanonicalHeight h = canonical_height(EndoMap::polynomial(parse_poly("x^2")), parse_point("2"), tol);
  CHECK(!h.preperiodic);
  CHECK(std::fabs(h.value.mid() - std::log(2.0)) < 1e-4);
  CanonicalHeight z = canonical_height(EndoMap::polynomial(parse_poly("x^2 - 1")), parse_point("-1"), tol);
  CHECK(z.preperiodic);
  CHECK(z.value.contains(Rat(0)));
}

TEST_CASE("digit guard") {
  CHECK_NOTHROW(check_digit_guard(parse_point("12345"), 10));
  CHECK_THROWS_AS(check_digit_guard(parse_point("123456789012"), 10), ResourceGuardError);
  CHECK_THROWS_AS(canonical_height(EndoMap::polynomial(parse_poly("2*x^2 + 1")), parse_point("3"), Rat(1, Int(1) << 200), 50),
                  ResourceGuardError);
}
