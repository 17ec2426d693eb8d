#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orbitcensus/freeness.hpp"

using namespace orbitcensus;

namespace {

Rat power_product(const std::vector<Rat>& v, const std::vector<Int>& w) {
  Rat acc = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    long e = w[i].get_si();
    Rat b = e >= 0 ? v[i] : 1 / v[i];
    for (long k = 0; k < std::labs(e); ++k) acc *= b;
  }
  return acc;
}

MapSet polys(std::initializer_list<const char*> fs) {
  std::vector<EndoMap> maps;
  for (const char* f : fs) maps.push_back(EndoMap::polynomial(parse_poly(f)));
  return MapSet::over_q(maps);
}

MapSet omega_set() {
  auto mod = cyclotomic_modulus(3);
  NFElem w = NFElem::generator(mod);
  NFPoly x2 = NFPoly::monomial(NFElem(1), 2);
  NFPoly one(NFElem(1));
  return MapSet::over_field(mod, {RatFn<NFElem>::make(x2, one), RatFn<NFElem>::make(x2 * w, one)}, {"F", "G"});
}

std::string rel(const Relation& r, const MapSet& s) {
  return word_to_string(r.lhs, s.names) + " = " + word_to_string(r.rhs, s.names);
}

}  // namespace

TEST_CASE("multiplicative independence") {
  for (const std::vector<Rat>& v : {std::vector<Rat>{4, 8}, {Rat(2), Rat(1, 2)}, {Rat(6), Rat(10), Rat(3, 5)},
                                    {Rat(12, 5), Rat(3), Rat(25, 16)}, {Rat(-4), Rat(2)}}) {
    IndependenceResult r = mult_indep_check(v);
    REQUIRE(!r.independent);
    CHECK(power_product(v, r.witness) == 1);
    bool nonzero = false;
    for (const auto& e : r.witness) nonzero = nonzero || e != 0;
    CHECK(nonzero);
  }
  IndependenceResult w = mult_indep_check(std::vector<Rat>{4, 8});
  CHECK(w.witness == std::vector<Int>{3, -2});
  CHECK(mult_indep_check(std::vector<Rat>{Rat(2), Rat(1, 2)}).witness == std::vector<Int>{1, 1});
  CHECK(mult_indep_check(std::vector<Rat>{2, 3, 5}).independent);
  CHECK(mult_indep_check(std::vector<Rat>{6, 10, 15}).independent);
  CHECK(mult_indep_check(std::vector<Rat>{Rat(6), Rat(10), Rat(7, 3)}).independent);
  CHECK(!mult_indep_check(std::vector<Rat>{Rat(-1)}).independent);
  CHECK(mult_indep_check(std::vector<Int>{Int(2), Int(3)}).independent);
}

TEST_CASE("Chebyshev polynomials") {
  CHECK(chebyshev_poly(0) == parse_poly("2"));
  CHECK(chebyshev_poly(1) == parse_poly("x"));
  CHECK(chebyshev_poly(3) == parse_poly("x^3 - 3*x"));
  CHECK(chebyshev_poly(4) == parse_poly("x^4 - 4*x^2 + 2"));
  for (unsigned n = 1; n <= 50; ++n) {
    // z^n T_n(z + 1/z) = z^{2n} + 1 as polynomials in z.
    UniPoly T = chebyshev_poly(n);
    UniPoly zz1 = parse_poly("x^2 + 1");
    UniPoly acc;
    UniPoly pw(Rat(1));
    for (unsigned k = 0; k <= n; ++k) {
      acc += pw * UniPoly::monomial(T.coeff(k), n - k);
      pw = pw * zz1;
    }
    CHECK(acc == UniPoly::monomial(Rat(1), 2 * n) + UniPoly(Rat(1)));
  }
  for (unsigned n = 1; n <= 25; ++n) CHECK(chebyshev_poly(2 * n) == chebyshev_poly(n) * chebyshev_poly(n) - UniPoly(Rat(2)));
  CHECK(scaled_chebyshev(3, Rat(4)) == parse_poly("x^3 - 3/4*x"));
}

TEST_CASE("cyclic and Chebyshev inner factors") {
  DecompositionReport t6 = detect_chebyshev_inner(chebyshev_poly(6));
  CHECK(t6.found);
  CHECK(t6.n == 2);
  CHECK(t6.reconstruct() == chebyshev_poly(6));

  UniPoly f = chebyshev_poly(3).compose(parse_poly("2*x + 1"));
  DecompositionReport c3 = detect_chebyshev_inner(f);
  CHECK(c3.found);
  CHECK(c3.n == 3);
  CHECK(c3.kind == InnerKind::chebyshev);
  CHECK(c3.reconstruct() == f);
  REQUIRE(c3.rational_linear().has_value());
  CHECK(*c3.rational_linear() == parse_poly("2*x + 1"));

  UniPoly sq = parse_poly("x^4 + 2*x^2 + 1");
  DecompositionReport cy = detect_cyclic_inner(sq);
  CHECK(cy.found);
  CHECK(cy.n == 2);
  CHECK(cy.outer == parse_poly("x^2 + 2*x + 1"));
  CHECK(cy.reconstruct() == sq);

  CHECK(!detect_cyclic_inner(parse_poly("x^4 + x")).found);
  CHECK(!detect_chebyshev_inner(parse_poly("x^4 + x")).found);
}

TEST_CASE("decomposition reconstructs composite inputs") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> c(-5, 5);
  auto rnd = [&](int deg) {
    std::vector<Rat> cs;
    for (int i = 0; i <= deg; ++i) cs.emplace_back(c(rng));
    if (cs.back() == 0) cs.back() = 2;
    return UniPoly(cs);
  };
  for (int trial = 0; trial < 30; ++trial) {
    unsigned n = 2 + trial % 3;
    UniPoly g = rnd(2);
    UniPoly l({Rat(c(rng)), Rat(1 + trial % 3)});
    UniPoly cyc = g.compose(UniPoly::monomial(Rat(1), n).compose(l));
    DecompositionReport d = detect_cyclic_inner(cyc);
    CHECK(d.found);
    CHECK(d.reconstruct() == cyc);
    UniPoly cheb = g.compose(chebyshev_poly(n).compose(l));
    DecompositionReport e = detect_chebyshev_inner(cheb, n);
    CHECK(e.found);
    CHECK(e.reconstruct() == cheb);
  }
}

TEST_CASE("right factors") {
  UniPoly f = parse_poly("x^2 + 3").compose(parse_poly("x^3 + 2*x"));
  auto rf = right_factor(f, 3);
  REQUIRE(rf.has_value());
  CHECK(rf->first == parse_poly("x^3 + 2*x"));
  CHECK(rf->second.compose(rf->first) == f);
  CHECK(!right_factor(parse_poly("x^6 + x"), 2).has_value());
}

TEST_CASE("critical values") {
  CriticalReport a = critical_separation_check({EndoMap::polynomial(parse_poly("x^2")), EndoMap::polynomial(parse_poly("x^2 + 1"))});
  CHECK(!a.separate);
  CHECK(a.simple);
  REQUIRE(a.profiles.size() == 2);
  CHECK(a.profiles[0].D.monic() == parse_poly("x"));
  CHECK(a.profiles[1].D.monic() == parse_poly("x - 1"));
  CriticalReport b = critical_separation_check({EndoMap::polynomial(parse_poly("x^5 + x")), EndoMap::polynomial(parse_poly("x^5 + 2"))});
  CHECK(!b.separate);
  CHECK(!b.simple);
  CriticalProfile r = critical_profile(EndoMap::rational(parse_poly("x^2 + 1"), parse_poly("x")));
  CHECK(r.D.monic() == parse_poly("x^2 - 4"));
  CHECK(r.infinity_ramification == 0);
  CHECK(r.squarefree);
  CriticalProfile p = critical_profile(EndoMap::polynomial(parse_poly("x^3 + x")));
  CHECK(p.infinity_ramification == 2);
}

TEST_CASE("relation search") {
  MapSet w = omega_set();
  RelationSearch rs = find_relations(w, 3);
  std::vector<std::string> got;
  for (const auto& r : rs.relations) got.push_back(rel(r, w));
  CHECK(got == std::vector<std::string>{"G∘G = F∘F", "G∘F∘F = F∘F∘G", "G∘F∘G = F∘G∘F"});

  CHECK(find_relations(polys({"2*x^2", "3*x^3 + 1"}), 5).relations.empty());

  MapSet c = polys({"x^2", "x^3"});
  RelationSearch cr = find_relations(c, 3);
  REQUIRE(cr.relations.size() == 1);
  CHECK(cr.relations[0].lhs == Word{1, 0});
  CHECK(cr.relations[0].rhs == Word{0, 1});

  CHECK(shortlex_less({1}, {0, 0}));
  CHECK(shortlex_less({0, 1}, {1, 0}));
  CHECK(!shortlex_less({0, 1}, {0, 1}));
}

TEST_CASE("freeness certificates") {
  FreenessCertificate a = freeness_certificate(polys({"2*x^2", "3*x^3 + 1"}));
  CHECK(a.verdict == Verdict::free);
  CHECK(a.criterion == Criterion::polynomial_independence);
  FreenessCertificate b = freeness_certificate(polys({"x^2", "x^3"}));
  CHECK(b.verdict == Verdict::not_free);
  CHECK(b.criterion == Criterion::relation_found);
  FreenessCertificate c = freeness_certificate(omega_set());
  CHECK(c.verdict == Verdict::not_free);
  CHECK(to_string(c.verdict) == "not-free");
  CHECK(to_string(c.criterion) == "relation-found");
  CHECK(to_string(Verdict::unknown) == "unknown");
}
