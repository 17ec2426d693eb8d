#include "orbitcensus/curves.hpp"

#include <algorithm>
#include <numeric>

namespace orbitcensus {

NFBiPoly to_nf(const RatBiPoly& f) {
  std::vector<NFPoly> rows;
  for (const auto& r : f.rows()) rows.push_back(to_nf(r));
  return NFBiPoly(std::move(rows));
}

std::optional<RatBiPoly> to_rational(const NFBiPoly& f) {
  std::vector<UniPoly> rows;
  for (const auto& r : f.rows()) {
    auto q = to_rational(r);
    if (!q) return std::nullopt;
    rows.push_back(std::move(*q));
  }
  return RatBiPoly(std::move(rows));
}

NFElem galois_conjugate(const NFElem& a, unsigned r) {
  if (!a.modulus()) return a;
  NFElem zr = NFElem::generator(a.modulus()).pow(static_cast<long>(r));
  return a.rep().eval_in(zr, [](const Rat& c) { return NFElem(c); });
}

NFBiPoly galois_conjugate(const NFBiPoly& f, unsigned r) {
  std::vector<NFPoly> rows;
  for (const auto& row : f.rows()) {
    std::vector<NFElem> cs;
    for (const auto& c : row.coeffs()) cs.push_back(galois_conjugate(c, r));
    rows.emplace_back(std::move(cs));
  }
  return NFBiPoly(std::move(rows));
}

Rat normalizing_shift(const UniPoly& f) {
  const long d = f.degree();
  if (d < 2) throw InputError("curve analysis needs degree >= 2");
  return -f.coeff(static_cast<std::size_t>(d - 1)) / (Rat(d) * f.lead());
}

namespace {

std::vector<unsigned> units_mod(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned r = 1; r <= n; ++r)
    if (std::gcd(r, n) == 1) out.push_back(r % n == 0 ? n : r);
  return out;
}

// Φ(X − t, Y − t).
NFBiPoly pull_back(const NFBiPoly& phi, const Rat& t) {
  NFBiPoly X = NFBiPoly::X() - NFBiPoly(NFElem(t));
  NFBiPoly Y = NFBiPoly::Y() - NFBiPoly(NFElem(t));
  return phi.compose(X, Y);
}

NFBiPoly orbit_product(const NFBiPoly& phi, unsigned n) {
  std::vector<NFBiPoly> seen;
  NFBiPoly acc(NFElem(1));
  for (unsigned r : units_mod(n)) {
    NFBiPoly c = galois_conjugate(phi, r);
    if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
    acc *= c;
    seen.push_back(std::move(c));
  }
  return acc;
}

}  // namespace

std::vector<LinearFactor> linear_factor_search(const UniPoly& f) {
  const Rat t = normalizing_shift(f);
  const UniPoly g = f.shift(t);
  const long d = f.degree();
  long n = 0;
  for (long k = 1; k <= d; ++k)
    if (!is_zero(g.coeff(static_cast<std::size_t>(k)))) n = std::gcd(n, k);
  const NFBiPoly F = to_nf(difference_quotient(f));
  std::vector<LinearFactor> out;
  for (long e = 2; e <= n; ++e) {
    if (n % e != 0) continue;
    auto mod = cyclotomic_modulus(static_cast<unsigned>(e));
    NFElem a = NFElem::generator(mod);
    NFBiPoly shifted = NFBiPoly::Y() - NFBiPoly::X() * a;
    NFBiPoly lin = pull_back(shifted, t);
    if (!divides(lin, F)) throw std::logic_error("linear factor candidate failed exact division");
    auto q = to_rational(orbit_product(lin, static_cast<unsigned>(e)));
    if (!q) throw std::logic_error("Galois orbit product of a linear factor is not rational");
    out.push_back({static_cast<unsigned>(e), a, lin, *q});
  }
  return out;
}

QuadraticSearch quadratic_factor_search(const UniPoly& f) {
  QuadraticSearch out;
  const long d = f.degree();
  const Rat t = normalizing_shift(f);
  const UniPoly g = f.shift(t);
  const auto dd = static_cast<unsigned>(d);
  auto mod = cyclotomic_modulus(dd);
  const NFElem zeta = NFElem::generator(mod);
  const NFBiPoly Ft = to_nf(difference_quotient(g));
  const NFBiPoly F = to_nf(difference_quotient(f));
  const auto units = units_mod(dd);

  // Y^j ≡ A_j + B_j Y modulo Φ, over Q(ζ)[X, k] with k in the Y slot.
  const NFBiPoly Xb = NFBiPoly::X();
  const NFBiPoly K = NFBiPoly::Y();
  for (unsigned j = 1; j < dd; ++j) {
    for (unsigned l = j + 1; l < dd; ++l) {
      std::pair<unsigned, unsigned> best{j, l};
      for (unsigned r : units) {
        unsigned a = (r * j) % dd;
        unsigned b = (r * l) % dd;
        std::pair<unsigned, unsigned> c{std::min(a, b), std::max(a, b)};
        best = std::min(best, c);
      }
      if (best != std::make_pair(j, l)) continue;
      NFElem ap = zeta.pow(j);
      NFElem am = zeta.pow(l);
      NFElem s = ap + am;
      NFElem p = ap * am;
      NFBiPoly A(NFElem(1));
      NFBiPoly B;
      NFBiPoly RA, RB;
      const NFBiPoly kp = K - Xb * Xb * p;
      for (std::size_t row = 0; row < Ft.rows().size(); ++row) {
        NFBiPoly c = NFBiPoly::from_x(Ft.rows()[row]);
        RA += c * A;
        RB += c * B;
        NFBiPoly nA = kp * B;
        NFBiPoly nB = A + Xb * B * s;
        A = std::move(nA);
        B = std::move(nB);
      }
      // Every X-coefficient of RA, RB is a polynomial in k that must vanish.
      NFPoly gk;
      bool any = false;
      for (const NFBiPoly* R : {&RA, &RB}) {
        if (R->is_zero()) continue;
        auto sw = R->swapped();  // rows now indexed by powers of X, variable k
        for (const auto& row : sw.rows()) {
          if (row.is_zero()) continue;
          gk = any ? gcd(gk, row) : row.monic();
          any = true;
        }
      }
      if (!any) {
        out.unresolved.emplace_back(j, l);
        continue;
      }
      while (gk.degree() >= 1 && is_zero(gk.coeff(0))) gk = divrem(gk, NFPoly::x()).first;
      if (gk.degree() < 1) continue;
      if (gk.degree() > 1) {
        out.unresolved.emplace_back(j, l);
        continue;
      }
      NFElem k = -gk.coeff(0) / gk.coeff(1);
      NFBiPoly phi_t = NFBiPoly::Y() * NFBiPoly::Y() - Xb * NFBiPoly::Y() * s + Xb * Xb * p - NFBiPoly(k);
      if (!divides(phi_t, Ft)) throw std::logic_error("quadratic candidate failed exact division");
      QuadraticFactor q;
      q.exponent_plus = j;
      q.exponent_minus = l;
      q.s = s;
      q.p = p;
      q.k = k;
      q.symmetric = phi_t == phi_t.swapped();
      q.factor = pull_back(phi_t, t);
      if (!divides(q.factor, F)) throw std::logic_error("pulled-back quadratic factor failed exact division");
      q.q_product = to_rational(orbit_product(q.factor, dd));
      q.points_at_infinity = points_at_infinity(q.factor, d);
      out.factors.push_back(std::move(q));
    }
  }
  return out;
}

long points_at_infinity(const NFBiPoly& phi, long d) {
  if (d < 2) throw InputError("points at infinity need d >= 2");
  NFPoly top = phi.top_form();
  long D = phi.total_degree();
  if (D < 1) throw PreconditionError("points at infinity need a nonconstant curve");
  std::vector<NFElem> ones(static_cast<std::size_t>(d), NFElem(1));
  NFPoly target{std::move(ones)};
  if (!exact_divide(target, top))
    throw PreconditionError("top form does not divide (X^d - Y^d)/(X - Y)");
  return squarefree_part(top).degree() + (top.degree() < D ? 1 : 0);
}

long points_at_infinity(const RatBiPoly& phi, long d) { return points_at_infinity(to_nf(phi), d); }

std::vector<NFBiPoly> chebyshev_quadratics(unsigned n) {
  if (n < 3) throw InputError("Chebyshev quadratics need n >= 3");
  auto mod = cyclotomic_modulus(n);
  NFElem z = NFElem::generator(mod);
  NFBiPoly X = NFBiPoly::X();
  NFBiPoly Y = NFBiPoly::Y();
  std::vector<NFBiPoly> out;
  for (unsigned j = 1; 2 * j < n; ++j) {
    NFElem zj = z.pow(j);
    NFElem zi = zj.inverse();
    NFElem diff = zj - zi;
    out.push_back(X * X - X * Y * (zj + zi) + Y * Y + NFBiPoly(diff * diff));
  }
  return out;
}

FactorReport siegel_report(const UniPoly& f) {
  FactorReport r;
  r.f = f;
  r.F = difference_quotient(f);
  r.shift = normalizing_shift(f);
  r.linear = linear_factor_search(f);
  r.quadratic = quadratic_factor_search(f);
  r.cyclic = detect_cyclic_inner(f);
  r.chebyshev = detect_chebyshev_inner(f, 3);
  r.F_points_at_infinity = points_at_infinity(r.F, f.degree());
  bool any_plus = false;
  if (r.chebyshev.found) {
    const UniPoly& h = r.chebyshev.inner;
    RatBiPoly hx, hy;
    for (std::size_t k = 0; k < h.size(); ++k) {
      hx += RatBiPoly::monomial(h.coeffs()[k], k, 0);
      hy += RatBiPoly::monomial(h.coeffs()[k], 0, k);
    }
    NFBiPoly minus = to_nf(hx - hy);
    NFBiPoly plus = to_nf(hx + hy - RatBiPoly(2 * r.chebyshev.offset));
    for (auto& q : r.quadratic.factors) {
      q.minus_case = divides(q.factor, minus);
      q.plus_case = divides(q.factor, plus);
      any_plus = any_plus || q.plus_case;
    }
  }
  r.no_small_factor = r.linear.empty() && r.quadratic.factors.empty() && r.quadratic.unresolved.empty();
  bool has_quad = !r.quadratic.factors.empty();
  r.consistent = (r.linear.empty() != r.cyclic.found) && (!r.chebyshev.found || has_quad) &&
                 (!has_quad || r.chebyshev.found || any_plus);
  return r;
}

}  // namespace orbitcensus
