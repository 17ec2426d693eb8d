#include "orbitcensus/exactnum/rational.hpp"

#include <algorithm>
#include <cctype>

namespace orbitcensus {

namespace {

std::string trimmed(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool all_digits(const std::string& s, std::size_t from) {
  if (from >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(from), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t from = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return all_digits(s, from);
}

Int parse_plain_int(const std::string& s) {
  if (!is_integer_literal(s)) throw InputError("not an integer: '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string s = trimmed(text);
  if (s.empty()) throw InputError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = parse_plain_int(trimmed(s.substr(0, slash)));
    Int den = parse_plain_int(trimmed(s.substr(slash + 1)));
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole, 0) || (!frac.empty() && !all_digits(frac, 0)))
      throw InputError("malformed decimal '" + s + "'");
    Int num(whole + frac, 10);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rat q(neg ? Int(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rat(parse_plain_int(s));
}

Int parse_int_expr(std::string_view text) {
  std::string s = trimmed(text);
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    Int base = parse_plain_int(s.substr(0, caret));
    Int expo = parse_plain_int(s.substr(caret + 1));
    if (expo < 0 || !expo.fits_ulong_p()) throw InputError("bad exponent in '" + s + "'");
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), expo.get_ui());
    return out;
  }
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    Rat mant = parse_rat(s.substr(0, e));
    Int expo = parse_plain_int(s.substr(e + 1));
    if (expo < 0 || !expo.fits_ulong_p()) throw InputError("bad exponent in '" + s + "'");
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, expo.get_ui());
    Rat v = mant * Rat(p);
    if (v.get_den() != 1) throw InputError("'" + s + "' is not an integer");
    return v.get_num();
  }
  return parse_plain_int(s);
}

std::string to_string(const Rat& q) { return q.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

Int floor_rat(const Rat& q) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Int ceil_rat(const Rat& q) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Int gcd_all(const std::vector<Int>& values) {
  Int g = 0;
  for (const Int& v : values) g = gcd(g, v);
  return g;
}

Int lcm_int(const Int& a, const Int& b) { return lcm(a, b); }

std::size_t decimal_digits(const Int& z) {
  if (z == 0) return 1;
  // mpz_sizeinbase may overestimate by one; correct exactly for small values.
  std::size_t n = mpz_sizeinbase(z.get_mpz_t(), 10);
  if (n < 4096) return Int(abs(z)).get_str(10).size();
  return n;
}

long ceil_log2(const Rat& q) {
  if (sgn(q) <= 0) throw std::domain_error("ceil_log2 of a non-positive value");
  long k = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 1;
  auto two_pow = [](long e) {
    Rat r = 1;
    if (e >= 0) {
      mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
      mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return r;
  };
  while (two_pow(k) < q) ++k;
  while (two_pow(k - 1) >= q) --k;
  return k;
}

}  // namespace orbitcensus
