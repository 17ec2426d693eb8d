#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orbitcensus/exactnum/poly.hpp"

namespace orbitcensus {

/// Bivariate polynomial over a field R, stored as Σ_j row_j(X) · Y^j.
///
/// `coeff(i, j)` is the coefficient of X^i Y^j. Rows never carry trailing
/// zero rows, so the zero polynomial has no rows.
template <class R>
class BiPoly {
 public:
  using Row = Poly<R>;

  BiPoly() = default;
  BiPoly(const R& c) : rows_{Row(c)} { trim(); }  // NOLINT(google-explicit-constructor)
  explicit BiPoly(std::vector<Row> rows) : rows_(std::move(rows)) { trim(); }

  static BiPoly from_x(const Row& p) { return BiPoly(std::vector<Row>{p}); }
  static BiPoly from_y(const Row& p) {
    std::vector<Row> rows;
    for (const auto& c : p.coeffs()) rows.emplace_back(c);
    return BiPoly(std::move(rows));
  }
  static BiPoly X() { return from_x(Row::x()); }
  static BiPoly Y() { return from_y(Row::x()); }
  static BiPoly monomial(const R& c, std::size_t i, std::size_t j) {
    std::vector<Row> rows(j + 1);
    rows[j] = Row::monomial(c, i);
    return BiPoly(std::move(rows));
  }
  /// Builds from a grid g[i][j] = coefficient of X^i Y^j.
  static BiPoly from_grid(const std::vector<std::vector<R>>& g) {
    BiPoly out;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g[i].size(); ++j) out += monomial(g[i][j], i, j);
    return out;
  }

  bool is_zero() const { return rows_.empty(); }
  long degree_y() const { return rows_.empty() ? kNegInfDegree : static_cast<long>(rows_.size()) - 1; }
  long degree_x() const {
    long d = kNegInfDegree;
    for (const auto& r : rows_) d = std::max(d, r.degree());
    return d;
  }
  long total_degree() const {
    long d = kNegInfDegree;
    for (std::size_t j = 0; j < rows_.size(); ++j)
      if (!rows_[j].is_zero()) d = std::max(d, rows_[j].degree() + static_cast<long>(j));
    return d;
  }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(std::size_t j) const {
    static const Row kZero;
    return j < rows_.size() ? rows_[j] : kZero;
  }
  R coeff(std::size_t i, std::size_t j) const { return row(j).coeff(i); }

  /// Grid g[i][j], sized (deg_x+1) × (deg_y+1).
  std::vector<std::vector<R>> grid() const {
    if (is_zero()) return {};
    auto dx = static_cast<std::size_t>(degree_x());
    std::vector<std::vector<R>> g(dx + 1, std::vector<R>(rows_.size(), R(0)));
    for (std::size_t j = 0; j < rows_.size(); ++j)
      for (std::size_t i = 0; i < rows_[j].size(); ++i) g[i][j] = rows_[j].coeffs()[i];
    return g;
  }

  /// F(Y, X).
  BiPoly swapped() const {
    BiPoly out;
    for (std::size_t j = 0; j < rows_.size(); ++j)
      for (std::size_t i = 0; i < rows_[j].size(); ++i) out += monomial(rows_[j].coeffs()[i], j, i);
    return out;
  }

  /// F(X, q(X)).
  Row eval_y(const Row& q) const {
    Row acc;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) acc = acc * q + *it;
    return acc;
  }
  /// F(x0, Y) as a polynomial in Y.
  Row eval_x(const R& x0) const {
    std::vector<R> cs;
    cs.reserve(rows_.size());
    for (const auto& r : rows_) cs.push_back(r.eval(x0));
    return Row(std::move(cs));
  }
  R eval(const R& x0, const R& y0) const { return eval_x(x0).eval(y0); }

  /// F(px, py) for bivariate substitutions.
  BiPoly compose(const BiPoly& px, const BiPoly& py) const {
    BiPoly acc;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      BiPoly rowval;
      const auto& cs = it->coeffs();
      for (auto ct = cs.rbegin(); ct != cs.rend(); ++ct) rowval = rowval * px + BiPoly(*ct);
      acc = acc * py + rowval;
    }
    return acc;
  }

  /// Homogeneous part of top total degree D, dehomogenized at Y = 1:
  /// coefficient k is that of X^k Y^{D-k}.
  Row top_form() const {
    long D = total_degree();
    if (D == kNegInfDegree) return Row();
    std::vector<R> cs(static_cast<std::size_t>(D) + 1, R(0));
    for (std::size_t j = 0; j < rows_.size() && static_cast<long>(j) <= D; ++j)
      cs[static_cast<std::size_t>(D) - j] = rows_[j].coeff(static_cast<std::size_t>(D) - j);
    return Row(std::move(cs));
  }

  BiPoly& operator+=(const BiPoly& o) {
    if (o.rows_.size() > rows_.size()) rows_.resize(o.rows_.size());
    for (std::size_t j = 0; j < o.rows_.size(); ++j) rows_[j] += o.rows_[j];
    trim();
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    if (o.rows_.size() > rows_.size()) rows_.resize(o.rows_.size());
    for (std::size_t j = 0; j < o.rows_.size(); ++j) rows_[j] -= o.rows_[j];
    trim();
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  BiPoly operator-() const {
    BiPoly out = *this;
    for (auto& r : out.rows_) r = -r;
    return out;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return BiPoly();
    std::vector<Row> out(a.rows_.size() + b.rows_.size() - 1);
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      if (a.rows_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.rows_.size(); ++j) out[i + j] += a.rows_[i] * b.rows_[j];
    }
    return BiPoly(std::move(out));
  }
  BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }
  friend BiPoly operator*(BiPoly a, const R& s) {
    for (auto& r : a.rows_) r = r * s;
    a.trim();
    return a;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.rows_ == b.rows_; }
  friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

  /// Leading coefficient in lex order with Y before X.
  const R& lex_lead() const { return rows_.back().lead(); }

 private:
  void trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
  }
  std::vector<Row> rows_;
};

/// Exact division in R[X,Y]; nullopt if b does not divide a.
///
/// Uses lex division with Y > X. For a single divisor the remainder is zero
/// exactly when b divides a, so the first leading term that b's leading term
/// does not divide settles non-divisibility.
template <class R>
std::optional<BiPoly<R>> exact_divide(const BiPoly<R>& a, const BiPoly<R>& b) {
  if (b.is_zero()) throw std::domain_error("bivariate division by zero");
  BiPoly<R> rem = a;
  BiPoly<R> quo;
  const long by = b.degree_y();
  const long bx = b.rows().back().degree();
  const R inv = R(1) / b.lex_lead();
  while (!rem.is_zero()) {
    long ry = rem.degree_y();
    long rx = rem.rows().back().degree();
    if (ry < by || rx < bx) return std::nullopt;
    R c = rem.lex_lead() * inv;
    auto term = BiPoly<R>::monomial(c, static_cast<std::size_t>(rx - bx), static_cast<std::size_t>(ry - by));
    quo += term;
    rem -= term * b;
  }
  return quo;
}

template <class R>
bool divides(const BiPoly<R>& b, const BiPoly<R>& a) {
  return exact_divide(a, b).has_value();
}

template <class R>
BiPoly<R> pow(const BiPoly<R>& base, unsigned long k) {
  BiPoly<R> acc(R(1));
  BiPoly<R> b = base;
  while (k > 0) {
    if (k & 1UL) acc *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return acc;
}

namespace detail {

// Fraction-free (Bareiss) determinant over the Euclidean ring R[X].
template <class R>
Poly<R> bareiss_det(std::vector<std::vector<Poly<R>>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly<R>(R(1));
  Poly<R> prev(R(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return Poly<R>();
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly<R> num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divrem(num, prev).first;
      }
      m[i][k] = Poly<R>();
    }
    prev = m[k][k];
  }
  Poly<R> det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace detail

/// Resultant with respect to Y, a polynomial in X.
template <class R>
Poly<R> resultant_y(const BiPoly<R>& a, const BiPoly<R>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<R>();
  const auto m = static_cast<std::size_t>(a.degree_y());
  const auto n = static_cast<std::size_t>(b.degree_y());
  if (m == 0 && n == 0) return Poly<R>(R(1));
  if (m == 0) return pow(a.row(0), n);
  if (n == 0) return pow(b.row(0), m);
  const std::size_t size = m + n;
  std::vector<std::vector<Poly<R>>> syl(size, std::vector<Poly<R>>(size));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) syl[i][i + k] = a.row(m - k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) syl[n + i][i + k] = b.row(n - k);
  return detail::bareiss_det(std::move(syl));
}

template <class R>
Poly<R> resultant_x(const BiPoly<R>& a, const BiPoly<R>& b) {
  return resultant_y(a.swapped(), b.swapped());
}

template <class R>
BiPoly<R> derivative_y(const BiPoly<R>& f) {
  std::vector<Poly<R>> rows;
  for (std::size_t j = 1; j < f.rows().size(); ++j) rows.push_back(f.rows()[j] * R(static_cast<int>(j)));
  return BiPoly<R>(std::move(rows));
}

template <class R>
BiPoly<R> derivative_x(const BiPoly<R>& f) {
  std::vector<Poly<R>> rows;
  for (const auto& r : f.rows()) rows.push_back(r.derivative());
  return BiPoly<R>(std::move(rows));
}

/// Discriminant in Y: (-1)^{n(n-1)/2} res_Y(f, f_Y) / lc_Y(f).
template <class R>
Poly<R> discriminant_y(const BiPoly<R>& f) {
  long n = f.degree_y();
  if (n < 1) throw std::domain_error("discriminant of a polynomial constant in Y");
  if (n == 1) return Poly<R>(R(1));
  Poly<R> r = resultant_y(f, derivative_y(f));
  auto q = exact_divide(r, f.rows().back());
  if (!q) throw std::logic_error("resultant not divisible by the leading coefficient");
  Poly<R> out = *q;
  if (((n * (n - 1)) / 2) % 2 != 0) out = -out;
  return out;
}

/// gcd of the Y-coefficients, a monic polynomial in X.
template <class R>
Poly<R> content_y(const BiPoly<R>& f) {
  Poly<R> g;
  for (const auto& r : f.rows()) g = gcd(g, r);
  return g;
}

template <class R>
BiPoly<R> primitive_part_y(const BiPoly<R>& f) {
  if (f.is_zero()) return f;
  Poly<R> c = content_y(f);
  std::vector<Poly<R>> rows;
  for (const auto& r : f.rows()) rows.push_back(divrem(r, c).first);
  return BiPoly<R>(std::move(rows));
}

/// gcd in R[X,Y] by the primitive pseudo-remainder sequence in Y, normalized
/// so the lex-leading coefficient is 1.
template <class R>
BiPoly<R> gcd(const BiPoly<R>& a, const BiPoly<R>& b) {
  if (a.is_zero() && b.is_zero()) return BiPoly<R>();
  if (a.is_zero()) return b * (R(1) / b.lex_lead());
  if (b.is_zero()) return a * (R(1) / a.lex_lead());
  Poly<R> cg = gcd(content_y(a), content_y(b));
  BiPoly<R> p = primitive_part_y(a);
  BiPoly<R> q = primitive_part_y(b);
  if (p.degree_y() < q.degree_y()) std::swap(p, q);
  while (!q.is_zero() && q.degree_y() > 0) {
    BiPoly<R> r = p;
    const Poly<R>& lq = q.rows().back();
    while (!r.is_zero() && r.degree_y() >= q.degree_y()) {
      auto shift = static_cast<std::size_t>(r.degree_y() - q.degree_y());
      std::vector<Poly<R>> mono(shift + 1);
      mono[shift] = r.rows().back();
      r = r * BiPoly<R>::from_x(lq) - BiPoly<R>(std::move(mono)) * q;
    }
    p = std::move(q);
    q = primitive_part_y(r);
  }
  BiPoly<R> core = q.is_zero() ? p : BiPoly<R>(R(1));
  BiPoly<R> out = BiPoly<R>::from_x(cg) * core;
  return out * (R(1) / out.lex_lead());
}

/// Text form such as `X^2 + X*Y + Y^2 - 3`.
template <class R>
std::string to_string(const BiPoly<R>& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  long D = f.total_degree();
  for (long tot = D; tot >= 0; --tot) {
    for (long i = tot; i >= 0; --i) {
      long j = tot - i;
      if (j >= static_cast<long>(f.rows().size())) continue;
      R c = f.coeff(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
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
      std::string mono;
      if (i > 0) mono += i == 1 ? "X" : "X^" + std::to_string(i);
      if (j > 0) {
        if (!mono.empty()) mono += "*";
        mono += j == 1 ? "Y" : "Y^" + std::to_string(j);
      }
      if (mono.empty()) {
        os << cs;
      } else if (cs == "1") {
        os << mono;
      } else {
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        os << (compound ? "(" + cs + ")" : cs) << "*" << mono;
      }
    }
  }
  return os.str();
}

using RatBiPoly = BiPoly<Rat>;

}  // namespace orbitcensus
