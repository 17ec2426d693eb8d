// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "orbitcensus/census.hpp"
#include "orbitcensus/curves.hpp"
#include "orbitcensus/freeness.hpp"
#include "orbitcensus/words.hpp"

using namespace orbitcensus;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    o.detail << " [over time limit " << time_limit << " s]";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << o.detail.str() << " (" << secs << " s)"
            << std::endl;
}

bool near(const Interval& x, double v, double tol) { return std::fabs(x.mid() - v) <= tol && x.width() < tol; }

Int factorial(long n) {
  Int r = 1;
  for (long k = 2; k <= n; ++k) r *= k;
  return r;
}

// Ordered sums with parts in T, counted as Σ over multiplicities of (Σc)!/Π c_t!.
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

// Coefficients of 1/(1 − Σ z^t) up to z^N by power-series inversion.
std::vector<Int> series_inverse(const std::vector<long>& parts, long N) {
  std::vector<Int> g(N + 1, 0);
  g[0] = 1;
  for (long t : parts)
    if (t <= N) g[t] -= 1;
  std::vector<Int> h(N + 1, 0);
  h[0] = 1;  // g[0] = 1
  for (long k = 1; k <= N; ++k) {
    Int acc = 0;
    for (long j = 1; j <= k; ++j) acc += g[j] * h[k - j];
    h[k] = -acc;
  }
  return h;
}

// Root of 1 − z² − z³ in [1/2, 1] by long-double bisection; returns the final bracket.
std::pair<long double, long double> bisect_root() {
  long double a = 0.5L, b = 1.0L;
  auto g = [](long double z) { return 1 - z * z - z * z * z; };
  for (int i = 0; i < 200 && b - a > 1e-18L; ++i) {
    long double c = (a + b) / 2;
    (g(c) > 0 ? a : b) = c;
  }
  return {a, b};
}

std::vector<Word> all_words(std::size_t letters, std::size_t max_len) {
  std::vector<Word> out{Word{}}, layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (std::size_t a = 0; a < letters; ++a) {
        Word v = w;
        v.push_back(a);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

ProjPoint fold_eval(const Word& w, const std::vector<EndoMap>& maps, ProjPoint p) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = evaluate(maps[*it], p);
  return p;
}

std::vector<EndoMap> two_maps() {
  return {EndoMap::polynomial(parse_poly("2*x^2")), EndoMap::polynomial(parse_poly("3*x^3 + 1"))};
}

RatBiPoly in_x(const UniPoly& h) { return RatBiPoly::from_x(h); }
RatBiPoly in_y(const UniPoly& h) { return RatBiPoly::from_y(h); }

}  // namespace

int main() {
  std::cout.precision(6);

  criterion("AC1", "two-map example constants", 1.0, [](Outcome& o) {
    auto t = log_targets({2, 3}, Rat(1, Int(1) << 80));
    BoundReport r = build_bound_report({2, 3}, approximate_from_fractions(t, {Int(79), Int(126)}, {Int(80), Int(127)}, Int(115)));
    o.require(near(r.b1, 0.78437, 1e-5), "b1");
    o.require(near(r.b2, 0.79232, 1e-5), "b2");
    o.require(near(r.kappa5, 1.46457, 1e-4), "kappa5");
    o.require(near(r.tau5, 1.48541, 1e-4), "tau5");
    o.detail << " b1=" << r.b1.mid() << " b2=" << r.b2.mid() << " kappa5=" << r.kappa5.mid() << " tau5=" << r.tau5.mid();
  });

  criterion("AC2", "composition counts against two oracles", 10.0, [](Outcome& o) {
    int sets = 0;
    for (int mask = 1; mask < 64; ++mask) {
      std::vector<long> parts;
      long g = 0;
      for (long t = 1; t <= 6; ++t)
        if (mask & (1 << (t - 1))) {
          parts.push_back(t);
          g = std::gcd(g, t);
        }
      if (g != 1) continue;
      ++sets;
      auto f = composition_counts(parts, 100);
      for (long n = 0; n <= 30; ++n) {
        o.require(f[n] == multinomial_count(parts, n), "multinomial");
        o.require(count_exact(parts, n) == f[n], "count_exact");
      }
      auto h = series_inverse(parts, 100);
      for (long n = 0; n <= 100; ++n) o.require(f[n] == h[n], "series inversion");
    }
    o.detail << " part sets=" << sets;
  });

  criterion("AC3", "dominant root of 1 - z^2 - z^3", 0, [](Outcome& o) {
    RootEnclosure e = dominant_root(std::vector<long>{2, 3}, Rat(1, Int(10000000000000L)));
    Interval x = e.interval();
    auto [a, b] = bisect_root();
    o.require(x.width() <= 1e-12, "width");
    o.require(x.lo() <= static_cast<double>(b) && static_cast<double>(a) <= x.hi(), "bisection bracket");
    o.require(std::fabs(x.mid() - 0.7548776662) < 5e-11, "ten digits");
    DominantTerm dt = dominant_term({2, 3});
    Interval ratio = Interval(count_exact({2, 3}, 200)) * pow(dt.alpha.interval(), 200UL) / dt.kappa;
    o.require(std::fabs(ratio.mid() - 1) < 1e-2, "f200 ratio");
    o.detail << " width=" << x.width() << " ratio-1=" << ratio.mid() - 1;
  });

  criterion("AC4", "word counts between composition partial sums", 0, [](Outcome& o) {
    const std::vector<Int> n{79, 126}, m{80, 127};
    const Int u = 115;
    auto t = log_targets({2, 3}, Rat(1, Int(1) << 80));
    ApproxResult ap = approximate_from_fractions(t, n, m, u);
    o.require(verify_approx(ap, t), "fractions sandwich log 2, log 3");
    std::vector<long> nl{79, 126}, ml{80, 127};
    for (int k = 1; k <= 20; ++k) {
      Rat B(69 * k, 200);
      Interval eB = exp(Interval(B));
      Int cap_lo, cap_hi;
      mpz_fdiv_q(cap_lo.get_mpz_t(), eB.lower_rat().get_num_mpz_t(), eB.lower_rat().get_den_mpz_t());
      mpz_fdiv_q(cap_hi.get_mpz_t(), eB.upper_rat().get_num_mpz_t(), eB.upper_rat().get_den_mpz_t());
      o.require(cap_lo == cap_hi, "floor(e^B) certified");
      Int words = count_words_exact({2, 3}, cap_lo);
      Rat uB = B * Rat(u);
      Int M;
      mpz_fdiv_q(M.get_mpz_t(), uB.get_num_mpz_t(), uB.get_den_mpz_t());
      Int low = partial_sum_counts(ml, M.get_si());
      Int high = partial_sum_counts(nl, M.get_si());
      o.require(low <= words && words <= high, "sandwich at B=" + B.get_str());
      if (k == 20) o.detail << " B=6.9: " << low << " <= " << words << " <= " << high;
    }
  });

  criterion("AC5", "height counts for {2x^2, 3x^3+1} at P = 5", 60.0, [](Outcome& o) {
    auto maps = two_maps();
    FreenessCertificate cert = freeness_certificate(MapSet::over_q(maps));
    o.require(cert.verdict == Verdict::free, "freeness certificate");
    SetConstants c = set_constants(maps);
    BoundReport r = build_bound_report({2, 3}, Rat(1, 3));
    ProjPoint P = parse_point("5");
    o.detail << " delta=1/3 threshold=" << r.validity_threshold;
    for (const char* b : {"1e6", "1e10", "1e20"}) {
      Int B = parse_int_expr(b);
      HeightCountBounds hc = height_count_bounds(r, weil_height(P).h, log_int(B), c.bS);
      Int count = orbit_census_enumerate(maps, P, B, c).function_count;
      Interval nI(count);
      o.require(hc.counts.above_threshold, std::string("above threshold at B=") + b);
      o.require(hc.counts.lower_available && hc.counts.upper_available, "bounds available");
      o.require(certainly_leq(hc.counts.lower, nI) && certainly_leq(nI, hc.counts.upper), std::string("containment at B=") + b);
      o.detail << " B=" << b << ": " << hc.counts.lower.mid() << " <= " << count << " <= " << hc.counts.upper.mid();
    }
  });

  criterion("AC6", "single map x^2 at P = 2, B = 1e9", 0, [](Outcome& o) {
    SingleMapCount sc = single_map_count_bounds(EndoMap::polynomial(parse_poly("x^2")), parse_point("2"), Int(1000000000));
    o.require(sc.exact_count == 5, "count");
    o.require(sc.window_lower == 5 && sc.window_upper == 5, "window");
    o.require(sc.c_phi == 0, "c_phi");
    o.detail << " count=" << sc.exact_count << " window=[" << sc.window_lower << ", " << sc.window_upper << "]";
  });

  criterion("AC7", "relations among short words", 0, [](Outcome& o) {
    auto mod = cyclotomic_modulus(3);
    NFElem w = NFElem::generator(mod);
    NFPoly x2 = NFPoly::monomial(NFElem(1), 2);
    NFPoly one(NFElem(1));
    MapSet om = MapSet::over_field(mod, {RatFn<NFElem>::make(x2, one), RatFn<NFElem>::make(x2 * w, one)}, {"F", "G"});
    RelationSearch rs = find_relations(om, 3);
    const Word F = {0}, G = {1};
    std::set<std::set<Word>> expect{{{0, 0}, {1, 1}}, {{0, 0, 1}, {1, 0, 0}}, {{1, 0, 1}, {0, 1, 0}}};
    std::set<std::set<Word>> got;
    for (const auto& r : rs.relations) got.insert({r.lhs, r.rhs});
    o.require(rs.relations.size() == 3 && got == expect, "omega relations");
    o.require(find_relations(MapSet::over_q(two_maps()), 5).relations.empty(), "no relation for {2x^2, 3x^3+1}");
    o.detail << " found=" << rs.relations.size();
  });

  criterion("AC8", "Chebyshev identities", 0, [](Outcome& o) {
    // z^n T_n(z + 1/z) = z^{2n} + 1 clears the Laurent identity of denominators.
    for (unsigned n = 1; n <= 50; ++n) {
      UniPoly T = chebyshev_poly(n);
      UniPoly zz1 = parse_poly("x^2 + 1"), acc, pw(Rat(1));
      for (unsigned k = 0; k <= n; ++k) {
        acc += pw * UniPoly::monomial(T.coeff(k), n - k);
        pw = pw * zz1;
      }
      o.require(acc == UniPoly::monomial(Rat(1), 2 * n) + UniPoly(Rat(1)), "Laurent n=" + std::to_string(n));
    }
    for (unsigned n = 1; n <= 25; ++n)
      o.require(chebyshev_poly(2 * n) == chebyshev_poly(n) * chebyshev_poly(n) - UniPoly(Rat(2)), "doubling");
  });

  criterion("AC9", "factors of the difference quotient", 0, [](Outcome& o) {
    RatBiPoly X = RatBiPoly::X(), Y = RatBiPoly::Y();
    RatBiPoly expect = X * X + X * Y + Y * Y - RatBiPoly(Rat(3));
    o.require(difference_quotient(chebyshev_poly(3)) == expect, "F for T3");
    QuadraticSearch q = quadratic_factor_search(chebyshev_poly(3));
    bool found = false;
    for (const auto& f : q.factors) found = found || to_rational(f.factor) == expect;
    o.require(found, "T3 quadratic returned");
    for (unsigned n : {3u, 5u, 7u}) {
      UniPoly T = chebyshev_poly(n);
      NFBiPoly prod = to_nf(X - Y);
      for (const auto& f : chebyshev_quadratics(n)) prod *= f;
      o.require(prod == to_nf(in_x(T) - in_y(T)), "product n=" + std::to_string(n));
    }
    FactorReport r = siegel_report(parse_poly("x^4 + x"));
    o.require(r.no_small_factor && r.consistent, "x^4 + x has no small factor");
    o.detail << " x^4+x: points at infinity of F=" << r.F_points_at_infinity;
  });

  criterion("AC10", "height machinery soundness", 0, [](Outcome& o) {
    std::vector<EndoMap> sample{EndoMap::polynomial(parse_poly("2*x^2")), EndoMap::polynomial(parse_poly("3*x^3 + 1")),
                                EndoMap::polynomial(parse_poly("x^2 - 7/3*x + 1/5")),
                                EndoMap::rational(parse_poly("x^2 + 1"), parse_poly("x")),
                                EndoMap::rational(parse_poly("3*x^2 - 2"), parse_poly("5*x^2 + x"))};
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    long violations = 0;
    for (const auto& phi : sample) {
      Interval C(height_bound(phi));
      Interval d(phi.degree());
      for (int i = 0; i < 10000; ++i) {
        ProjPoint p = ProjPoint::make(Int(num(rng)), Int(den(rng)));
        Interval diff = abs(weil_height(evaluate(phi, p)).h - d * weil_height(p).h);
        if (certainly_less(C, diff)) ++violations;
      }
    }
    o.require(violations == 0, "functoriality");
    auto maps = two_maps();
    SetConstants c = set_constants(maps);
    Interval tate = Interval(c.CS) / Interval(c.dS - 1);
    long tv = 0;
    for (const auto& w : all_words(2, 6)) {
      Int deg = 1;
      for (auto a : w) deg *= maps[a].degree();
      for (int i = 0; i < 4; ++i) {
        ProjPoint q = ProjPoint::make(Int(num(rng) % 1000), Int(den(rng) % 1000 + 1));
        Interval dev = abs(weil_height(fold_eval(w, maps, q)).h / Interval(deg) - weil_height(q).h);
        if (certainly_less(tate, dev)) ++tv;
      }
    }
    o.require(tv == 0, "Tate telescoping");
    Interval c1 = log_int(Int(2));
    for (const Rat& delta : {Rat(1, 10), Rat(1, 100), Rat(1, 1000)}) {
      BoundReport r = build_bound_report({2, 3}, delta);
      o.require(certainly_leq(r.b2 - r.b1, gap_and_crude_bounds(2, c1, delta).gap_bound), "gap at delta=" + delta.get_str());
    }
    BoundReport r = build_bound_report({2, 3}, Rat(1, 10));
    o.require(certainly_leq(r.b2, gap_and_crude_bounds(2, c1, Rat(1, 10)).crude_bound), "crude bound");
    o.detail << " functoriality violations=" << violations << " Tate violations=" << tv;
  });

  return failures;
}
