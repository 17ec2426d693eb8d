#include "orbitcensus/exactnum/nfelem.hpp"

#include <map>
#include <mutex>

namespace orbitcensus {

namespace {

const NFElem::Modulus& common_modulus(const NFElem& a, const NFElem& b) {
  const auto& ma = a.modulus();
  const auto& mb = b.modulus();
  if (!ma) return mb;
  if (!mb || ma == mb) return ma;
  if (*ma != *mb) throw RingMismatchError("number-field elements from different quotient rings");
  return ma;
}

UniPoly reduce(const UniPoly& p, const NFElem::Modulus& mod) {
  if (!mod || p.degree() < mod->degree()) return p;
  return divrem(p, *mod).second;
}

}  // namespace

NFElem::NFElem(UniPoly rep, Modulus mod) : rep_(reduce(rep, mod)), mod_(std::move(mod)) {}

NFElem NFElem::generator(const Modulus& mod) { return NFElem(UniPoly::x(), mod); }

std::optional<Rat> NFElem::as_rational() const {
  if (rep_.degree() > 0) return std::nullopt;
  return rep_.coeff(0);
}

NFElem NFElem::operator-() const { return NFElem(-rep_, mod_); }

NFElem operator+(const NFElem& a, const NFElem& b) {
  const auto& m = common_modulus(a, b);
  NFElem out;
  out.rep_ = a.rep_ + b.rep_;
  out.mod_ = m;
  return out;
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  const auto& m = common_modulus(a, b);
  NFElem out;
  out.rep_ = a.rep_ - b.rep_;
  out.mod_ = m;
  return out;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  const auto& m = common_modulus(a, b);
  return NFElem(a.rep_ * b.rep_, m);
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }

bool operator==(const NFElem& a, const NFElem& b) {
  common_modulus(a, b);
  return a.rep_ == b.rep_;
}

NFElem NFElem::inverse() const {
  if (rep_.is_zero()) throw std::domain_error("inverse of zero in a quotient ring");
  if (rep_.degree() == 0) return NFElem(UniPoly(Rat(1) / rep_.coeff(0)), mod_);
  auto [g, s, t] = xgcd(rep_, *mod_);
  (void)t;
  if (g.degree() != 0) throw std::domain_error("element is a zero divisor: modulus is reducible");
  return NFElem(s, mod_);
}

NFElem NFElem::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  NFElem acc(1);
  acc.mod_ = mod_;
  NFElem b = *this;
  while (k > 0) {
    if (k & 1L) acc = acc * b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return acc;
}

std::string NFElem::to_string(const std::string& var) const { return orbitcensus::to_string(rep_, var); }

std::string coeff_string(const NFElem& a) { return a.to_string("t"); }

NFElem::Modulus make_modulus(const UniPoly& m) {
  if (m.degree() < 1) throw InputError("quotient-ring modulus must have degree at least 1");
  if (m.lead() != 1) throw InputError("quotient-ring modulus must be monic");
  return std::make_shared<const UniPoly>(m);
}

UniPoly cyclotomic(unsigned n) {
  if (n == 0) throw InputError("cyclotomic index must be positive");
  UniPoly p = UniPoly::monomial(Rat(1), n) - UniPoly(Rat(1));
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto q = exact_divide(p, cyclotomic(d));
    p = *q;
  }
  return p;
}

NFElem::Modulus cyclotomic_modulus(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, NFElem::Modulus> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto m = make_modulus(cyclotomic(n));
  cache.emplace(n, m);
  return m;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

NFPoly to_nf(const UniPoly& p) {
  std::vector<NFElem> cs;
  cs.reserve(p.size());
  for (const auto& c : p.coeffs()) cs.emplace_back(c);
  return NFPoly(std::move(cs));
}

std::optional<UniPoly> to_rational(const NFPoly& p) {
  std::vector<Rat> cs;
  cs.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    auto q = c.as_rational();
    if (!q) return std::nullopt;
    cs.push_back(*q);
  }
  return UniPoly(std::move(cs));
}

}  // namespace orbitcensus
