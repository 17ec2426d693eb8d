#pragma once

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orbitcensus/exactnum/rational.hpp"

namespace orbitcensus {

/// Degree of the zero polynomial.
inline constexpr long kNegInfDegree = std::numeric_limits<long>::min();

namespace detail {
template <class R>
bool coeff_is_zero_impl(const R& c) {
  return is_zero(c);
}
}  // namespace detail

template <class R>
bool coeff_is_zero(const R& c) {
  return detail::coeff_is_zero_impl(c);
}

/// Dense univariate polynomial over a field R, coefficients in ascending order.
///
/// R must be constructible from int, provide + - * / and have an `is_zero`
/// overload. The coefficient vector never carries trailing zeros, so the zero
/// polynomial has an empty vector and degree kNegInfDegree.
template <class R>
class Poly {
 public:
  using Coeff = R;

  Poly() = default;
  Poly(const R& c) {  // NOLINT(google-explicit-constructor)
    if (!coeff_is_zero(c)) c_.push_back(c);
  }
  Poly(std::initializer_list<R> cs) : c_(cs) { trim(); }
  explicit Poly(std::vector<R> cs) : c_(std::move(cs)) { trim(); }

  static Poly x() { return monomial(R(1), 1); }
  static Poly monomial(const R& c, std::size_t k) {
    if (coeff_is_zero(c)) return Poly();
    std::vector<R> cs(k + 1, R(0));
    cs[k] = c;
    return Poly(std::move(cs));
  }

  long degree() const { return c_.empty() ? kNegInfDegree : static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(std::size_t k) const { return k < c_.size() ? c_[k] : R(0); }
  const R& lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  R eval(const R& at) const {
    R acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  /// Horner evaluation in another ring S, given a coefficient embedding.
  template <class S, class Embed>
  S eval_in(const S& at, Embed embed) const {
    S acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + embed(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> d(c_.size() - 1, R(0));
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * R(static_cast<int>(k));
    return Poly(std::move(d));
  }

  /// this(inner(x)).
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + Poly(*it);
    return acc;
  }

  /// this(x + t).
  Poly shift(const R& t) const { return compose(Poly({t, R(1)})); }

  /// this(a·x).
  Poly scale_var(const R& a) const {
    std::vector<R> out = c_;
    R p(1);
    for (auto& c : out) {
      c = c * p;
      p = p * a;
    }
    return Poly(std::move(out));
  }

  Poly monic() const {
    if (c_.empty()) return *this;
    R inv = R(1) / c_.back();
    return *this * inv;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly out = *this;
    for (auto& c : out.c_) c = -c;
    return out;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<R> out(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(Poly a, const R& s) {
    if (coeff_is_zero(s)) return Poly();
    for (auto& c : a.c_) c = c * s;
    a.trim();
    return a;
  }
  friend Poly operator*(const R& s, Poly a) { return std::move(a) * s; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!coeff_is_zero(R(a.c_[k] - b.c_[k]))) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
bool is_zero(const Poly<R>& p) {
  return p.is_zero();
}

/// Quotient and remainder with deg(rem) < deg(b).
template <class R>
std::pair<Poly<R>, Poly<R>> divrem(const Poly<R>& a, const Poly<R>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<R>(), a};
  std::vector<R> rem = a.coeffs();
  const auto& bc = b.coeffs();
  std::size_t db = bc.size() - 1;
  std::vector<R> quo(rem.size() - db, R(0));
  R inv = R(1) / bc.back();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (is_zero(rem[k])) continue;
    R q = rem[k] * inv;
    quo[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - q * bc[j];
  }
  rem.resize(db);
  return {Poly<R>(std::move(quo)), Poly<R>(std::move(rem))};
}

/// a / b when b divides a, std::nullopt otherwise.
template <class R>
std::optional<Poly<R>> exact_divide(const Poly<R>& a, const Poly<R>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

template <class R>
Poly<R> pow(const Poly<R>& base, unsigned long k) {
  Poly<R> acc(R(1));
  Poly<R> b = base;
  while (k > 0) {
    if (k & 1UL) acc *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return acc;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s·a + t·b = g, g monic.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> xgcd(const Poly<R>& a, const Poly<R>& b) {
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0(R(1)), s1;
  Poly<R> t0, t1(R(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<R> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  R inv = R(1) / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Resultant by the Euclidean remainder sequence.
template <class R>
R resultant(Poly<R> f, Poly<R> g) {
  if (f.is_zero() || g.is_zero()) return R(0);
  R acc(1);
  for (;;) {
    long m = f.degree();
    long n = g.degree();
    if (n == 0) {
      R p(1);
      for (long k = 0; k < m; ++k) p = p * g.lead();
      return acc * p;
    }
    Poly<R> r = divrem(f, g).second;
    if (r.is_zero()) return R(0);
    if ((m % 2 != 0) && (n % 2 != 0)) acc = -acc;
    long e = m - r.degree();
    for (long k = 0; k < e; ++k) acc = acc * g.lead();
    f = std::move(g);
    g = std::move(r);
  }
}

/// disc(f) = (-1)^{d(d-1)/2} res(f, f') / lc(f).
template <class R>
R discriminant(const Poly<R>& f) {
  long d = f.degree();
  if (d < 1) throw std::domain_error("discriminant of a constant polynomial");
  if (d == 1) return R(1);
  R r = resultant(f, f.derivative()) / f.lead();
  if (((d * (d - 1)) / 2) % 2 != 0) r = -r;
  return r;
}

template <class R>
Poly<R> squarefree_part(const Poly<R>& f) {
  if (f.degree() < 1) return f;
  Poly<R> g = gcd(f, f.derivative());
  return divrem(f, g).first;
}

template <class R>
bool is_squarefree(const Poly<R>& f) {
  if (f.degree() < 1) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Yun's algorithm: pairs (a_k, k) with f = lc · Π a_k^k, each a_k monic and squarefree.
template <class R>
std::vector<std::pair<Poly<R>, int>> squarefree_decomposition(const Poly<R>& f) {
  std::vector<std::pair<Poly<R>, int>> out;
  if (f.degree() < 1) return out;
  Poly<R> fm = f.monic();
  Poly<R> d = fm.derivative();
  Poly<R> a = gcd(fm, d);
  Poly<R> b = divrem(fm, a).first;
  Poly<R> c = divrem(d, a).first;
  Poly<R> e = c - b.derivative();
  int k = 1;
  while (b.degree() > 0) {
    Poly<R> g = gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, k);
    b = divrem(b, g).first;
    c = divrem(e, g).first;
    e = c - b.derivative();
    ++k;
  }
  return out;
}

inline std::string coeff_string(const Rat& q) { return to_string(q); }

/// Human-readable form in descending degree, e.g. `x^3 - 3*x`.
template <class R>
std::string to_string(const Poly<R>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    const R& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    std::string cs = coeff_string(c);
    bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (negative) cs.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << cs;
      continue;
    }
    if (cs != "1") {
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      os << (compound ? "(" + cs + ")" : cs) << "*";
    }
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

using UniPoly = Poly<Rat>;

/// Parses `c0 + c1*x + c2*x^2` style text (any term order, `p/q` coefficients).
UniPoly parse_poly(std::string_view text, char var = 'x');

/// Builds a polynomial from ascending coefficient strings.
UniPoly poly_from_strings(const std::vector<std::string>& coeffs);
std::vector<std::string> poly_to_strings(const UniPoly& p);

/// Rational c and primitive integer vector v with p = c · Σ v_k x^k and a
/// positive leading entry in v.
std::pair<Rat, std::vector<Int>> primitive_integer_form(const UniPoly& p);

}  // namespace orbitcensus
