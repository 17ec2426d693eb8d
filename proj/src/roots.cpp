#include "orbitcensus/exactnum/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace orbitcensus {

namespace {

constexpr long kMaxCompanionDegree = 1024;

int sign_changes(const std::vector<UniPoly>& seq, const Rat& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rat two_pow(long e) {
  Rat r = 1;
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
  }
  return r;
}

// Enclosure [r - eps, r + eps] around an exact rational root r of q, isolated
// and with non-root endpoints.
RootEnclosure around_exact_root(const UniPoly& q, const std::vector<UniPoly>& seq, const Rat& r,
                                Rat eps) {
  for (;;) {
    Rat lo = r - eps;
    Rat hi = r + eps;
    if (sgn(q.eval(lo)) != 0 && sgn(q.eval(hi)) != 0 && sturm_count(seq, lo, hi) == 1)
      return RootEnclosure{lo, hi, 1};
    eps /= 2;
  }
}

// Shrinks (lo, hi], which holds exactly one root of the squarefree q.
RootEnclosure tighten(const UniPoly& q, const std::vector<UniPoly>& seq, Rat lo, Rat hi,
                      const Rat& width) {
  for (;;) {
    if (sgn(q.eval(hi)) == 0) return around_exact_root(q, seq, hi, std::min(width, Rat(hi - lo)) / 4);
    if (sgn(q.eval(lo)) != 0 && hi - lo < width) return RootEnclosure{lo, hi, 1};
    Rat mid = (lo + hi) / 2;
    if (sgn(q.eval(mid)) == 0) return around_exact_root(q, seq, mid, std::min(width, Rat(hi - lo)) / 4);
    if (sturm_count(seq, lo, mid) == 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
}

int multiplicity_at(const std::vector<std::pair<UniPoly, int>>& yun, const RootEnclosure& e) {
  for (const auto& [f, k] : yun) {
    auto seq = sturm_sequence(f);
    if (sturm_count(seq, e.lower, e.upper) == 1) return k;
  }
  return 1;
}

void validate_exponents(const std::vector<long>& exponents) {
  if (exponents.size() < 2)
    throw PreconditionError("dominant root needs at least two exponents (single part is the one-map case)");
  std::set<long> seen;
  long g = 0;
  for (long n : exponents) {
    if (n <= 0) throw InputError("composition exponents must be positive");
    if (!seen.insert(n).second) throw InputError("composition exponents must be distinct");
    g = std::gcd(g, n);
  }
  if (g != 1) throw PreconditionError("composition exponents must have gcd 1 (got " + std::to_string(g) + ")");
}

int certified_sign(const std::vector<long>& exponents, const Rat& x) {
  for (mpfr_prec_t prec = std::max<mpfr_prec_t>(default_precision(), 128); prec <= (1L << 22); prec *= 2) {
    Interval v = eval_composition_denominator(exponents, Interval(x, prec));
    if (v.certainly_positive()) return 1;
    if (v.certainly_negative()) return -1;
  }
  // Exact fallback; 1 - Σ z^n has no rational root in (0, 1).
  Rat acc = 1;
  for (long n : exponents) {
    Rat p;
    mpz_pow_ui(p.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(p.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
    acc -= p;
  }
  return sgn(acc);
}

using CLD = std::complex<long double>;

CLD horner(const std::vector<long double>& c, CLD z) {
  CLD acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  for (;;) {
    const auto& a = seq[seq.size() - 2];
    const auto& b = seq.back();
    UniPoly r = divrem(a, b).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sturm_count(const std::vector<UniPoly>& seq, const Rat& a, const Rat& b) {
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<RootEnclosure> isolate_real_roots(const UniPoly& p, const Rat& a, const Rat& b,
                                              std::optional<Rat> width) {
  if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
  std::vector<RootEnclosure> out;
  if (p.degree() == 0 || a >= b) return out;
  Rat w = width ? *width : Rat((b - a) * two_pow(-64));
  UniPoly q = squarefree_part(p);
  auto seq = sturm_sequence(q);
  auto yun = squarefree_decomposition(p);

  struct Piece {
    Rat lo, hi;
    int count;
  };
  std::vector<Piece> stack{{a, b, sturm_count(seq, a, b)}};
  std::vector<RootEnclosure> found;
  while (!stack.empty()) {
    Piece cur = stack.back();
    stack.pop_back();
    int count = cur.count;
    if (cur.hi == b && sgn(q.eval(b)) == 0) {
      // The open interval excludes b itself.
      if (count == 1) continue;
    }
    if (count == 0) continue;
    if (count == 1) {
      found.push_back(tighten(q, seq, cur.lo, cur.hi, w));
      continue;
    }
    Rat mid = (cur.lo + cur.hi) / 2;
    int left = sturm_count(seq, cur.lo, mid);
    stack.push_back({mid, cur.hi, count - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(found.begin(), found.end(),
            [](const RootEnclosure& x, const RootEnclosure& y) { return x.lower < y.lower; });
  for (auto& e : found) {
    e.multiplicity = multiplicity_at(yun, e);
    out.push_back(e);
  }
  return out;
}

RootEnclosure refine_root(const UniPoly& p, const RootEnclosure& e, const Rat& width) {
  UniPoly q = squarefree_part(p);
  auto seq = sturm_sequence(q);
  RootEnclosure r = tighten(q, seq, e.lower, e.upper, width);
  r.multiplicity = e.multiplicity;
  return r;
}

UniPoly composition_denominator(const std::vector<long>& exponents) {
  UniPoly g(Rat(1));
  for (long n : exponents) {
    if (n <= 0) throw InputError("composition exponents must be positive");
    g -= UniPoly::monomial(Rat(1), static_cast<std::size_t>(n));
  }
  return g;
}

std::vector<long> composition_exponents(const UniPoly& g) {
  if (g.coeff(0) != 1) throw InputError("expected a polynomial of shape 1 - sum z^n");
  std::vector<long> out;
  for (std::size_t k = 1; k < g.size(); ++k) {
    const Rat& c = g.coeffs()[k];
    if (sgn(c) == 0) continue;
    if (c != -1) throw InputError("expected a polynomial of shape 1 - sum z^n");
    out.push_back(static_cast<long>(k));
  }
  return out;
}

Interval eval_composition_denominator(const std::vector<long>& exponents, const Interval& x) {
  Interval acc(Rat(1), x.precision());
  for (long n : exponents) acc -= pow(x, static_cast<unsigned long>(n));
  return acc;
}

Interval eval_composition_derivative(const std::vector<long>& exponents, const Interval& x) {
  Interval acc(Rat(0), x.precision());
  for (long n : exponents) {
    Interval term = Interval(Rat(n), x.precision()) * pow(x, static_cast<unsigned long>(n - 1));
    acc -= term;
  }
  return acc;
}

RootEnclosure dominant_root(const std::vector<long>& exponents, std::optional<Rat> width) {
  validate_exponents(exponents);
  Rat w = width ? *width : two_pow(-64);
  Rat lo = 0;
  Rat hi = 1;
  while (hi - lo >= w) {
    Rat mid = (lo + hi) / 2;
    if (certified_sign(exponents, mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return RootEnclosure{lo, hi, 1};
}

RootEnclosure dominant_root(const UniPoly& g, std::optional<Rat> width) {
  return dominant_root(composition_exponents(g), width);
}

std::vector<std::complex<long double>> approximate_complex_roots(const UniPoly& p) {
  long n = p.degree();
  if (n < 1) return {};
  if (n > kMaxCompanionDegree)
    throw ResourceGuardError("companion matrix degree " + std::to_string(n) + " exceeds the solver limit");
  std::vector<long double> c;
  c.reserve(p.size());
  for (const auto& q : p.coeffs()) c.push_back(static_cast<long double>(q.get_d()));
  std::vector<long double> dc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(c[k] * static_cast<long double>(k));

  auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(N, N);
  double lead = static_cast<double>(c.back());
  for (Eigen::Index i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < N; ++i) comp(i, N - 1) = -static_cast<double>(c[static_cast<std::size_t>(i)]) / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<CLD> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < N; ++i) {
    CLD z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 12; ++it) {
      CLD fz = horner(c, z);
      CLD dz = horner(dc, z);
      if (std::abs(dz) == 0.0L) break;
      CLD next = z - fz / dz;
      if (std::abs(horner(c, next)) > std::abs(fz)) break;
      z = next;
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](const CLD& x, const CLD& y) { return std::abs(x) < std::abs(y); });
  return roots;
}

double subdominant_modulus_estimate(const std::vector<long>& exponents) {
  validate_exponents(exponents);
  long deg = *std::max_element(exponents.begin(), exponents.end());
  if (deg > kMaxCompanionDegree) return std::numeric_limits<double>::quiet_NaN();
  auto roots = approximate_complex_roots(composition_denominator(exponents));
  return static_cast<double>(std::abs(roots.at(1)));
}

double subdominant_modulus_estimate(const UniPoly& g) {
  return subdominant_modulus_estimate(composition_exponents(g));
}

}  // namespace orbitcensus
