#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "orbitcensus/census.hpp"
#include "orbitcensus/words.hpp"

using namespace orbitcensus;

namespace {

Int factorial(long n) {
  Int r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

// Σ over multiplicity vectors of the multinomial (Σc)!/Π c_t!.
Int multinomial_count(const std::vector<long>& parts, long n) {
  Int total = 0;
  std::vector<long> c(parts.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rest) {
    if (i == parts.size()) {
      if (rest != 0) return;
      long len = 0;
      Int den = 1;
      for (long k : c) {
        len += k;
        den *= factorial(k);
      }
      total += factorial(len) / den;
      return;
    }
    for (long k = 0; k * parts[i] <= rest; ++k) {
      c[i] = k;
      rec(i + 1, rest - k * parts[i]);
    }
    c[i] = 0;
  };
  rec(0, n);
  return total;
}

bool within(const Interval& x, double v, double tol) { return std::fabs(x.mid() - v) <= tol && x.width() < tol; }

}  // namespace

TEST_CASE("composition counts against multinomial sums") {
  for (const std::vector<long>& parts : {std::vector<long>{1}, {2, 3}, {1, 2}, {2, 5, 7}, {3, 4}, {1, 4, 6}}) {
    auto f = composition_counts(parts, 40);
    for (long n = 0; n <= 40; ++n) CHECK(f[n] == multinomial_count(parts, n));
  }
  CHECK(count_exact({2, 3}, 5) == 2);
  CHECK(count_exact({2, 3}, 1) == 0);
  CHECK(count_exact({2, 3}, 0) == 1);
  CHECK(partial_sum_counts({2, 3}, 5) == 1 + 0 + 1 + 1 + 1 + 2);
  CHECK(partial_sum_counts({2, 3}, -1) == 0);
}

TEST_CASE("dominant term predicts the growth of the counts") {
  DominantTerm dt = dominant_term({2, 3});
  CHECK(std::fabs(dt.alpha.interval().mid() - 0.7548776662466927) < 1e-15);
  Int f = count_exact({2, 3}, 200);
  Interval ratio = Interval(f) * pow(dt.alpha.interval(), 200UL) / dt.kappa;
  CHECK(std::fabs(ratio.mid() - 1) < 1e-2);
  // The subdominant roots of 1 − z² − z³ have modulus about 1.15, so the error decays fast.
  CHECK(std::fabs(ratio.mid() - 1) < 1e-10);
  DominantTerm fib = dominant_term({1, 2});
  Interval r2 = Interval(count_exact({1, 2}, 60)) * pow(fib.alpha.interval(), 60UL) / fib.kappa;
  CHECK(std::fabs(r2.mid() - 1) < 1e-12);
}

TEST_CASE("two-map example constants") {
  auto t = log_targets({2, 3}, Rat(1, Int(1) << 80));
  BoundReport r = build_bound_report({2, 3}, approximate_from_fractions(t, {Int(79), Int(126)}, {Int(80), Int(127)}, Int(115)));
  CHECK(within(r.b1, 0.78437, 1e-5));
  CHECK(within(r.b2, 0.79232, 1e-5));
  CHECK(within(r.kappa5, 1.46457, 1e-4));
  CHECK(within(r.tau5, 1.48541, 1e-4));
  CHECK(certainly_less(r.b1, r.b2));
  CHECK(r.simple_roots);
  CHECK(r.r3 == 0);
  CHECK(r.r4 == 0);
  CHECK(r.subdominant_available);
  CHECK(r.validity_threshold > 0);
  // b_1 = −u log β with β the root of 1 − z^80 − z^127, and likewise for b_2.
  RootEnclosure beta = dominant_root(std::vector<long>{80, 127});
  CHECK(std::fabs(r.b1.mid() + 115 * std::log(beta.interval().mid())) < 1e-9);
  CHECK(certainly_leq(r.b2 - r.b1, r.gap_bound));
}

TEST_CASE("function counts sit inside the bounds") {
  BoundReport r = build_bound_report({2, 3}, Rat(1, 20));
  for (int k = 1; k <= 12; ++k) {
    double B = 0.75 * k;
    CountBounds cb = function_count_bounds(r, Interval::from_double(B));
    Interval n(count_words_exact({2, 3}, B));
    if (cb.lower_available) CHECK(certainly_leq(cb.lower, n));
    if (cb.upper_available) CHECK(certainly_leq(n, cb.upper));
  }
}

TEST_CASE("height counts sit inside the bounds") {
  std::vector<EndoMap> maps{EndoMap::polynomial(parse_poly("2*x^2")), EndoMap::polynomial(parse_poly("3*x^3 + 1"))};
  SetConstants c = set_constants(maps);
  BoundReport r = build_bound_report({2, 3}, Rat(1, 100));
  ProjPoint P = parse_point("5");
  for (const char* b : {"1e3", "1e6", "1e10", "1e20", "1e40"}) {
    Int B = parse_int_expr(b);
    HeightCountBounds hc = height_count_bounds(r, weil_height(P).h, log_int(B), c.bS);
    Interval n(orbit_census_enumerate(maps, P, B, c).function_count);
    if (hc.counts.lower_available) CHECK(certainly_leq(hc.counts.lower, n));
    if (hc.counts.upper_available) CHECK(certainly_leq(n, hc.counts.upper));
    CHECK(certainly_less(hc.log_degree_lower, hc.log_degree_upper));
  }
  CHECK_THROWS_AS(height_count_bounds(r, weil_height(parse_point("3")).h, log_int(Int(1000)), c.bS), PreconditionError);
}

TEST_CASE("gap and crude bounds") {
  Interval c1 = log_int(Int(2));
  for (const Rat& delta : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
    BoundReport r = build_bound_report({2, 3}, delta);
    GapCrude g = gap_and_crude_bounds(2, c1, delta);
    CHECK(certainly_leq(r.b2 - r.b1, g.gap_bound));
  }
  BoundReport r = build_bound_report({2, 3}, Rat(1, 10));
  GapCrude g = gap_and_crude_bounds(2, c1, Rat(1, 10));
  CHECK(certainly_leq(r.b2, g.crude_bound));
  CHECK(std::fabs(g.crude_bound.mid() - std::log(2.0) / (std::log(2.0) - 0.1)) < 1e-12);
}

TEST_CASE("single-map orbit count") {
  SingleMapCount sc = single_map_count_bounds(EndoMap::polynomial(parse_poly("x^2")), parse_point("2"), Int(1000000000));
  CHECK(sc.exact_count == 5);
  CHECK(sc.window_lower == 5);
  CHECK(sc.window_upper == 5);
  CHECK(sc.c_phi == 0);
  CHECK(!sc.preperiodic);
  SingleMapCount pre = single_map_count_bounds(EndoMap::polynomial(parse_poly("x^2 - 1")), parse_point("0"), Int(100));
  CHECK(pre.preperiodic);
  CHECK(pre.exact_count == 2);
  SingleMapCount other = single_map_count_bounds(EndoMap::polynomial(parse_poly("x^2 + 1")), parse_point("1"), parse_int_expr("1e30"),
                                                     Rat(1, 10000));
  CHECK(other.window_lower <= other.exact_count);
  CHECK(other.exact_count <= other.window_upper);
}

TEST_CASE("multiplicity bound formula") {
  Rat bS(3, 2), hP(5);
  MultiplicityBound m1 = multiplicity_bound(2, 3, bS, hP, bS);
  CHECK(m1.r_P == 1);
  CHECK(m1.height_threshold == Rat(9) * (hP + bS));
  CHECK(m1.X == Rat(9) * (hP + bS) / (Rat(3) * bS));
  // X = 13, so t = 2^{log2 13 + 2} = 52.
  CHECK(std::fabs(m1.t_bound.mid() - 52) < 1e-9);
  MultiplicityBound m2 = multiplicity_bound(3, 2, Rat(10), Rat(4), Rat(1));
  CHECK(m2.r_P == 4);
  CHECK_THROWS_AS(multiplicity_bound(2, 2, Rat(1), Rat(1), Rat(1)), PreconditionError);
  CHECK_THROWS_AS(multiplicity_bound(2, 2, Rat(1), Rat(3), Rat(0)), PreconditionError);
}

TEST_CASE("lower bound is positive past a finite validity threshold") {
  for (int q : {2, 3, 4, 6, 100}) {
    BoundReport r = build_bound_report({2, 3}, Rat(1, q));
    if (!std::isfinite(r.validity_threshold)) continue;
    for (double step : {0.01, 0.5, 2.0}) {
      CountBounds cb = function_count_bounds(r, Interval::from_double(r.validity_threshold + step));
      CHECK(cb.lower.certainly_positive());
    }
  }
}
