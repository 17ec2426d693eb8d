#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "orbitcensus/exactnum/interval.hpp"
#include "orbitcensus/exactnum/poly.hpp"

namespace orbitcensus {

/// [lower, upper] containing exactly `multiplicity` roots counted with multiplicity.
struct RootEnclosure {
  Rat lower;
  Rat upper;
  int multiplicity = 1;

  Rat width() const { return upper - lower; }
  bool contains(const Rat& q) const { return lower <= q && q <= upper; }
  Interval interval() const { return Interval(lower, upper); }
};

/// Sturm sequence p, p', -rem(p, p'), ...
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<UniPoly>& seq, const Rat& a, const Rat& b);

/// Disjoint enclosures of every real root in the open interval (a, b).
///
/// Enclosures are refined to width below `width` (default: 2^-64 · (b - a)).
/// Endpoints are never roots of p, so the squarefree part changes sign
/// across each enclosure.
std::vector<RootEnclosure> isolate_real_roots(const UniPoly& p, const Rat& a, const Rat& b,
                                              std::optional<Rat> width = std::nullopt);

/// Shrinks an isolating enclosure of a root of p below `width` by bisection.
RootEnclosure refine_root(const UniPoly& p, const RootEnclosure& e, const Rat& width);

/// 1 - Σ z^{n_i}.
UniPoly composition_denominator(const std::vector<long>& exponents);

/// Reads off the exponents of a polynomial of shape 1 - Σ z^{n_i}; throws otherwise.
std::vector<long> composition_exponents(const UniPoly& g);

/// Positive root α in (0,1) of 1 - Σ z^{n_i}.
///
/// Requires at least two distinct positive exponents with gcd 1. Sign tests use
/// MPFR interval evaluation of the sparse form, so very large exponents stay cheap.
RootEnclosure dominant_root(const std::vector<long>& exponents, std::optional<Rat> width = std::nullopt);
RootEnclosure dominant_root(const UniPoly& g, std::optional<Rat> width = std::nullopt);

/// Enclosure of 1 - Σ x^{n_i} at an interval argument.
Interval eval_composition_denominator(const std::vector<long>& exponents, const Interval& x);
/// Enclosure of the derivative -Σ n_i x^{n_i - 1}.
Interval eval_composition_derivative(const std::vector<long>& exponents, const Interval& x);

/// Floating approximations of all complex roots (companion eigenvalues, then
/// Newton polish), sorted by modulus. Not certified.
std::vector<std::complex<long double>> approximate_complex_roots(const UniPoly& p);

/// Second-smallest root modulus of 1 - Σ z^{n_i}; best effort.
double subdominant_modulus_estimate(const std::vector<long>& exponents);
double subdominant_modulus_estimate(const UniPoly& g);

}  // namespace orbitcensus
