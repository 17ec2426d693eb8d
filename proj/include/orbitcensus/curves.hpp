#pragma once

#include <optional>
#include <vector>

#include "orbitcensus/exactnum/bipoly.hpp"
#include "orbitcensus/exactnum/nfelem.hpp"
#include "orbitcensus/freeness.hpp"

namespace orbitcensus {

using RatBiPoly = BiPoly<Rat>;
using NFBiPoly = BiPoly<NFElem>;

/// F(X,Y) = (f(X) − f(Y))/(X − Y).
template <class R>
BiPoly<R> difference_quotient(const Poly<R>& f) {
  if (f.degree() < 1) throw InputError("difference quotient needs degree >= 1");
  BiPoly<R> out;
  for (std::size_t k = 1; k < f.size(); ++k) {
    const R& c = f.coeffs()[k];
    if (coeff_is_zero(c)) continue;
    for (std::size_t i = 0; i < k; ++i) out += BiPoly<R>::monomial(c, i, k - 1 - i);
  }
  return out;
}

NFBiPoly to_nf(const RatBiPoly& f);
std::optional<RatBiPoly> to_rational(const NFBiPoly& f);

/// Image of an element of Q(ζ_n) under ζ ↦ ζ^r.
NFElem galois_conjugate(const NFElem& a, unsigned r);
NFBiPoly galois_conjugate(const NFBiPoly& f, unsigned r);

/// Y − aX + (a − 1)t over Q(ζ_e), a = ζ_e, in the original coordinates.
struct LinearFactor {
  unsigned order;  // multiplicative order of a
  NFElem a;
  NFBiPoly factor;
  RatBiPoly q_product;  // product over the Galois orbit of a
};

/// Y² − sXY + pX² − k in the shifted coordinates, pulled back by the shift.
struct QuadraticFactor {
  unsigned exponent_plus;   // a₊ = ζ_d^{exponent_plus}
  unsigned exponent_minus;  // a₋ = ζ_d^{exponent_minus}
  NFElem s, p, k;
  NFBiPoly factor;
  std::optional<RatBiPoly> q_product;
  bool symmetric = false;   // symmetric in the shifted coordinates
  long points_at_infinity = 0;
  bool minus_case = false;  // divides h(X) − h(Y) for the detected Chebyshev inner h
  bool plus_case = false;   // divides h(X) + h(Y) − 2e
};

/// Shift t killing the second coefficient of f.
Rat normalizing_shift(const UniPoly& f);

std::vector<LinearFactor> linear_factor_search(const UniPoly& f);

struct QuadraticSearch {
  std::vector<QuadraticFactor> factors;
  /// Candidate pairs whose admissible k satisfy a polynomial of degree ≥ 2;
  /// nonempty means the sweep did not settle every candidate.
  std::vector<std::pair<unsigned, unsigned>> unresolved;
};

QuadraticSearch quadratic_factor_search(const UniPoly& f);

/// Distinct projective roots of the top form of Φ. The top form must divide
/// (X^d − Y^d)/(X − Y).
long points_at_infinity(const NFBiPoly& phi, long d);
long points_at_infinity(const RatBiPoly& phi, long d);

/// X² − (ζ^j + ζ^{−j})XY + Y² + (ζ^j − ζ^{−j})², j = 1..(n−1)/2, over Q(ζ_n).
std::vector<NFBiPoly> chebyshev_quadratics(unsigned n);

struct FactorReport {
  UniPoly f;
  RatBiPoly F;
  Rat shift;
  std::vector<LinearFactor> linear;
  QuadraticSearch quadratic;
  DecompositionReport cyclic;
  DecompositionReport chebyshev;  // inner degree ≥ 3
  long F_points_at_infinity = 0;
  /// No factor of degree ≤ 2 exists, so every irreducible factor of F has at
  /// least 3 points at infinity and none is a Siegel factor.
  bool no_small_factor = false;
  bool consistent = true;  // linear ⇔ cyclic and quadratic ⇒ detected Chebyshev or plus case
};

FactorReport siegel_report(const UniPoly& f);

}  // namespace orbitcensus
