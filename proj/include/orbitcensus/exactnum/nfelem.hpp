#pragma once

#include <memory>
#include <optional>
#include <string>

#include "orbitcensus/exactnum/poly.hpp"

namespace orbitcensus {

/// Thrown when two number-field elements live in different quotient rings.
struct RingMismatchError : InputError {
  using InputError::InputError;
};

/// Element of Q[t]/(m(t)) for a monic modulus m.
///
/// A null modulus marks a rational constant that adopts the modulus of
/// whatever it is combined with; this lets `NFElem(0)` and `NFElem(1)` act as
/// ring identities inside generic polynomial code. Irreducibility of the
/// modulus is not checked up front; inverting a zero divisor throws.
class NFElem {
 public:
  using Modulus = std::shared_ptr<const UniPoly>;

  NFElem() = default;
  NFElem(int v) : rep_(Rat(v)) {}         // NOLINT(google-explicit-constructor)
  NFElem(const Rat& q) : rep_(q) {}       // NOLINT(google-explicit-constructor)
  NFElem(UniPoly rep, Modulus mod);

  /// The class of t.
  static NFElem generator(const Modulus& mod);

  const UniPoly& rep() const { return rep_; }
  const Modulus& modulus() const { return mod_; }

  bool is_zero() const { return rep_.is_zero(); }
  std::optional<Rat> as_rational() const;

  NFElem operator-() const;
  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  friend bool operator==(const NFElem& a, const NFElem& b);
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

  NFElem inverse() const;
  NFElem pow(long k) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  UniPoly rep_;
  Modulus mod_;
};

inline bool is_zero(const NFElem& a) { return a.is_zero(); }
std::string coeff_string(const NFElem& a);

/// Wraps a monic polynomial of degree >= 1 as a shared modulus.
NFElem::Modulus make_modulus(const UniPoly& m);

/// n-th cyclotomic polynomial, by exact division of x^n - 1.
UniPoly cyclotomic(unsigned n);

/// Shared modulus for Q(zeta_n); identical pointers for repeated calls.
NFElem::Modulus cyclotomic_modulus(unsigned n);

/// Euler phi, used for the degree of cyclotomic fields.
unsigned euler_phi(unsigned n);

using NFPoly = Poly<NFElem>;

NFPoly to_nf(const UniPoly& p);

/// Coefficientwise rational view; nullopt if any coefficient is irrational.
std::optional<UniPoly> to_rational(const NFPoly& p);

}  // namespace orbitcensus
