#include "orbitcensus/exactnum/poly.hpp"

#include <cctype>
#include <map>

namespace orbitcensus {

namespace {

// One `*`-separated factor: a rational literal or var[^k].
void apply_factor(const std::string& factor, char var, Rat& coeff, unsigned long& power) {
  if (factor.empty()) throw InputError("empty factor in polynomial text");
  if (factor[0] == var) {
    unsigned long k = 1;
    if (factor.size() > 1) {
      if (factor[1] != '^' || factor.size() < 3) throw InputError("malformed power '" + factor + "'");
      Int e = parse_int_expr(factor.substr(2));
      if (e < 0 || !e.fits_ulong_p()) throw InputError("bad exponent in '" + factor + "'");
      k = e.get_ui();
    }
    power += k;
    return;
  }
  coeff *= parse_rat(factor);
}

}  // namespace

UniPoly parse_poly(std::string_view text, char var) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw InputError("empty polynomial text");
  std::map<unsigned long, Rat> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') sign = -sign;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw InputError("dangling sign in polynomial text");
    Rat coeff = sign;
    unsigned long power = 0;
    std::size_t start = 0;
    while (start <= term.size()) {
      std::size_t star = term.find('*', start);
      if (star == std::string::npos) star = term.size();
      apply_factor(term.substr(start, star - start), var, coeff, power);
      start = star + 1;
    }
    terms[power] += coeff;
    pos = end;
  }
  std::vector<Rat> cs(terms.rbegin()->first + 1, Rat(0));
  for (const auto& [k, c] : terms) cs[k] = c;
  return UniPoly(std::move(cs));
}

UniPoly poly_from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rat> cs;
  cs.reserve(coeffs.size());
  for (const auto& c : coeffs) cs.push_back(parse_rat(c));
  return UniPoly(std::move(cs));
}

std::vector<std::string> poly_to_strings(const UniPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  if (out.empty()) out.emplace_back("0");
  return out;
}

std::pair<Rat, std::vector<Int>> primitive_integer_form(const UniPoly& p) {
  if (p.is_zero()) return {Rat(0), {}};
  Int den = 1;
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  std::vector<Int> v;
  v.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    Rat scaled = c * den;
    v.push_back(scaled.get_num());
  }
  Int g = gcd_all(v);
  if (sgn(v.back()) < 0) g = -g;
  for (auto& z : v) z /= g;
  Rat scale(g, den);
  scale.canonicalize();
  return {scale, v};
}

}  // namespace orbitcensus
