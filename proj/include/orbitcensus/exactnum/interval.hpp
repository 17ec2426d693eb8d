#pragma once

#include <mpfr.h>

#include <string>

#include "orbitcensus/exactnum/rational.hpp"

namespace orbitcensus {

/// Working precision (bits) for new intervals. Defaults to 256.
mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

/// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the true value of any expression built from exact
/// inputs stays enclosed. Functions with restricted domains (log, sqrt, pow
/// with real exponents) throw std::domain_error when the enclosure is not
/// certainly inside the domain.
class Interval {
 public:
  Interval();
  /// Bit-width tag for constructing an interval at a given precision.
  struct Prec {
    mpfr_prec_t bits;
  };
  explicit Interval(Prec prec);
  Interval(const Rat& q);  // NOLINT(google-explicit-constructor)
  Interval(const Int& z);  // NOLINT(google-explicit-constructor)
  Interval(long v);        // NOLINT(google-explicit-constructor)
  Interval(int v) : Interval(static_cast<long>(v)) {}  // NOLINT
  Interval(const Rat& lo, const Rat& hi);
  Interval(const Int& z, mpfr_prec_t prec);
  Interval(const Rat& q, mpfr_prec_t prec);
  static Interval from_double(double v);
  static Interval hull(const Interval& a, const Interval& b);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  double lo() const;
  double hi() const;
  double mid() const;
  double width() const;
  Rat lower_rat() const;
  Rat upper_rat() const;

  bool contains(const Rat& q) const;
  bool contains(double v) const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool certainly_nonneg() const;

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  friend bool certainly_less(const Interval& a, const Interval& b);
  friend bool certainly_leq(const Interval& a, const Interval& b);

  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval pow(const Interval& base, const Interval& exponent);
  friend Interval pow(const Interval& base, unsigned long k);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval min(const Interval& a, const Interval& b);

  /// Outward-rounded decimal endpoints with `digits` significant digits.
  std::string lo_string(int digits = 17) const;
  std::string hi_string(int digits = 17) const;
  std::string to_string(int digits = 12) const;

  mpfr_srcptr lo_ptr() const { return lo_; }
  mpfr_srcptr hi_ptr() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Natural log of a positive integer, enclosed.
Interval log_int(const Int& z);

/// Enclosure of log(k) whose width is below `width`.
Interval log_enclosure(const Int& k, const Rat& width);

}  // namespace orbitcensus
