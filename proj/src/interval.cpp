#include "orbitcensus/exactnum/interval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace orbitcensus {

namespace {

std::atomic<mpfr_prec_t> g_precision{256};

// Scratch variable with RAII cleanup.
struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

std::string endpoint_string(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (mpfr_inf_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), x, rnd);
  std::string m(raw);
  mpfr_free_str(raw);
  bool neg = !m.empty() && m[0] == '-';
  if (neg) m.erase(0, 1);
  std::string out = neg ? "-" : "";
  out += m.substr(0, 1);
  if (m.size() > 1) {
    std::string rest = m.substr(1);
    while (!rest.empty() && rest.back() == '0') rest.pop_back();
    if (!rest.empty()) out += "." + rest;
  }
  long ex = static_cast<long>(e) - 1;
  if (ex != 0) out += "e" + std::to_string(ex);
  return out;
}

}  // namespace

mpfr_prec_t default_precision() { return g_precision.load(); }

void set_default_precision(mpfr_prec_t bits) {
  if (bits < 32) throw InputError("precision must be at least 32 bits");
  g_precision.store(bits);
}

Interval::Interval() : Interval(Prec{default_precision()}) {}

Interval::Interval(Prec prec) {
  mpfr_init2(lo_, prec.bits);
  mpfr_init2(hi_, prec.bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rat& q) : Interval(Prec{default_precision()}) {
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Int& z) : Interval(Prec{default_precision()}) {
  mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Int& z, mpfr_prec_t prec) : Interval(Prec{prec}) {
  mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rat& q, mpfr_prec_t prec) : Interval(Prec{prec}) {
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(long v) : Interval(Prec{default_precision()}) {
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const Rat& lo, const Rat& hi) : Interval(Prec{default_precision()}) {
  if (lo > hi) throw std::invalid_argument("interval with lo > hi");
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_double(double v) {
  Interval out;
  mpfr_set_d(out.lo_, v, MPFR_RNDD);
  mpfr_set_d(out.hi_, v, MPFR_RNDU);
  return out;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out(Interval::Prec{std::max(a.precision(), b.precision())});
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(Prec{other.precision()}) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double Interval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  Tmp t(precision() + 1);
  mpfr_add(t.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  return mpfr_get_d(t.v, MPFR_RNDN);
}

double Interval::width() const {
  Tmp t(precision());
  mpfr_sub(t.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(t.v, MPFR_RNDU);
}

Rat Interval::lower_rat() const {
  if (!mpfr_number_p(lo_)) throw std::domain_error("unbounded interval endpoint");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rat Interval::upper_rat() const {
  if (!mpfr_number_p(hi_)) throw std::domain_error("unbounded interval endpoint");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

bool Interval::contains(const Rat& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::certainly_nonneg() const { return mpfr_sgn(lo_) >= 0; }

Interval& Interval::operator+=(const Interval& o) {
  mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  Tmp t(precision());
  mpfr_sub(t.v, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
  mpfr_swap(lo_, t.v);
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  mpfr_prec_t p = precision();
  Tmp a(p), b(p), c(p), d(p);
  Tmp lo(p), hi(p);
  mpfr_mul(a.v, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(b.v, lo_, o.hi_, MPFR_RNDD);
  mpfr_mul(c.v, hi_, o.lo_, MPFR_RNDD);
  mpfr_mul(d.v, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(lo.v, a.v, b.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, c.v, MPFR_RNDD);
  mpfr_min(lo.v, lo.v, d.v, MPFR_RNDD);
  mpfr_mul(a.v, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(b.v, lo_, o.hi_, MPFR_RNDU);
  mpfr_mul(c.v, hi_, o.lo_, MPFR_RNDU);
  mpfr_mul(d.v, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(hi.v, a.v, b.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, c.v, MPFR_RNDU);
  mpfr_max(hi.v, hi.v, d.v, MPFR_RNDU);
  mpfr_swap(lo_, lo.v);
  mpfr_swap(hi_, hi.v);
  return *this;
}

Interval& Interval::operator/=(const Interval& o) {
  if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
    throw std::domain_error("interval division by an enclosure of zero");
  mpfr_prec_t p = o.precision();
  Interval inv(Prec{p});
  // 1/[a,b] = [1/b, 1/a] for intervals not containing zero.
  mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this *= inv;
}

Interval Interval::operator-() const {
  Interval out(Interval::Prec{precision()});
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

bool certainly_less(const Interval& a, const Interval& b) { return mpfr_less_p(a.hi_, b.lo_) != 0; }
bool certainly_leq(const Interval& a, const Interval& b) { return mpfr_lessequal_p(a.hi_, b.lo_) != 0; }

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw std::domain_error("log of an interval not certainly positive");
  Interval out(Interval::Prec{x.precision()});
  mpfr_log(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out(Interval::Prec{x.precision()});
  mpfr_exp(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw std::domain_error("sqrt of an interval not certainly nonnegative");
  Interval out(Interval::Prec{x.precision()});
  mpfr_sqrt(out.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, x.hi_, MPFR_RNDU);
  return out;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval out(Interval::Prec{x.precision()});
  mpfr_set_zero(out.lo_, 1);
  Tmp t(x.precision());
  mpfr_neg(t.v, x.lo_, MPFR_RNDU);
  mpfr_max(out.hi_, t.v, x.hi_, MPFR_RNDU);
  return out;
}

Interval pow(const Interval& base, const Interval& exponent) {
  return exp(exponent * log(base));
}

Interval pow(const Interval& base, unsigned long k) {
  if (k == 0) return Interval(1L);
  // Even powers of an interval straddling zero are taken from |x| so the
  // result stays nonnegative.
  Interval b = (k % 2 == 0) ? abs(base) : base;
  Interval acc(1L);
  while (k > 0) {
    if (k & 1UL) acc *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return acc;
}

Interval max(const Interval& a, const Interval& b) {
  Interval out(Interval::Prec{std::max(a.precision(), b.precision())});
  mpfr_max(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Interval min(const Interval& a, const Interval& b) {
  Interval out(Interval::Prec{std::max(a.precision(), b.precision())});
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

std::string Interval::lo_string(int digits) const { return endpoint_string(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_string(int digits) const { return endpoint_string(hi_, digits, MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

Interval log_int(const Int& z) {
  if (z <= 0) throw std::domain_error("log of a non-positive integer");
  return log(Interval(z));
}

Interval log_enclosure(const Int& k, const Rat& width) {
  mpfr_prec_t prec = std::max<mpfr_prec_t>(default_precision(), 64);
  for (int attempt = 0; attempt < 16; ++attempt, prec *= 2) {
    Interval l = log(Interval(k, prec));
    if (Rat(l.upper_rat() - l.lower_rat()) < width) return l;
  }
  throw ResourceGuardError("log enclosure did not reach the requested width");
}

}  // namespace orbitcensus
