#include "orbitcensus/maps.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace orbitcensus {

ProjPoint ProjPoint::make(Int x, Int y) {
  if (x == 0 && y == 0) throw InputError("[0:0] is not a projective point");
  Int g = gcd(x, y);
  x /= g;
  y /= g;
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
  return ProjPoint{x, y};
}

Rat ProjPoint::affine() const {
  if (is_infinity()) throw std::domain_error("the point at infinity has no affine coordinate");
  Rat q(x, y);
  q.canonicalize();
  return q;
}

std::string ProjPoint::to_string() const {
  return "[" + orbitcensus::to_string(x) + ":" + orbitcensus::to_string(y) + "]";
}

ProjPoint parse_point(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s == "inf" || s == "infinity") return ProjPoint::infinity();
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw InputError("unterminated projective point '" + s + "'");
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InputError("projective point needs ':' in '" + s + "'");
    Int x = parse_int_expr(s.substr(1, colon - 1));
    Int y = parse_int_expr(s.substr(colon + 1, s.size() - colon - 2));
    return ProjPoint::make(x, y);
  }
  return ProjPoint::from_rat(parse_rat(s));
}

Int height_H(const ProjPoint& p) {
  Int ax = abs(p.x);
  Int ay = abs(p.y);
  return ax > ay ? ax : ay;
}

WeilHeight weil_height(const ProjPoint& p) {
  Int H = height_H(p);
  return WeilHeight{H, log_int(H)};
}

EndoMap EndoMap::polynomial(const UniPoly& f, std::string name) {
  if (f.degree() < 1) throw InputError("a map needs degree at least 1");
  EndoMap m;
  m.kind_ = MapKind::polynomial;
  m.name_ = std::move(name);
  m.fn_ = RatFn<Rat>{f, UniPoly(Rat(1))};
  m.homogenize();
  return m;
}

EndoMap EndoMap::rational(const UniPoly& num, const UniPoly& den, std::string name) {
  if (den.is_zero()) throw InputError("rational map with zero denominator");
  if (gcd(num, den).degree() > 0) throw InputError("numerator and denominator share a factor: not a morphism");
  if (den.degree() == 0) return polynomial(num * (Rat(1) / den.lead()), std::move(name));
  EndoMap m;
  m.kind_ = MapKind::rational;
  m.name_ = std::move(name);
  m.fn_ = RatFn<Rat>::make(num, den);
  if (m.fn_.degree() < 1) throw InputError("a map needs degree at least 1");
  m.homogenize();
  return m;
}

EndoMap EndoMap::from_fn(const RatFn<Rat>& fn, std::string name) {
  if (fn.is_polynomial()) return polynomial(fn.num * (Rat(1) / fn.den.lead()), std::move(name));
  return rational(fn.num, fn.den, std::move(name));
}

void EndoMap::homogenize() {
  const long d = degree();
  Int den = 1;
  for (const auto& c : fn_.num.coeffs()) den = lcm(den, c.get_den());
  for (const auto& c : fn_.den.coeffs()) den = lcm(den, c.get_den());
  F_.assign(static_cast<std::size_t>(d) + 1, Int(0));
  G_.assign(static_cast<std::size_t>(d) + 1, Int(0));
  for (std::size_t k = 0; k < fn_.num.size(); ++k) F_[k] = Rat(fn_.num.coeffs()[k] * den).get_num();
  for (std::size_t k = 0; k < fn_.den.size(); ++k) G_[k] = Rat(fn_.den.coeffs()[k] * den).get_num();
  Int g = 0;
  for (const auto& z : F_) g = gcd(g, z);
  for (const auto& z : G_) g = gcd(g, z);
  for (auto& z : F_) z /= g;
  for (auto& z : G_) z /= g;
}

Rat EndoMap::leading_coefficient() const {
  if (kind_ != MapKind::polynomial) throw InputError("leading coefficient is defined for polynomial maps");
  return fn_.num.lead() / fn_.den.lead();
}

namespace {

Int eval_form(const std::vector<Int>& c, const Int& x, const std::vector<Int>& ypow) {
  const std::size_t d = c.size() - 1;
  Int acc = c[d];
  for (std::size_t k = d; k-- > 0;) {
    acc *= x;
    if (c[k] != 0) acc += c[k] * ypow[d - k];
  }
  return acc;
}

}  // namespace

ProjPoint EndoMap::operator()(const ProjPoint& p) const {
  const std::size_t d = F_.size() - 1;
  std::vector<Int> ypow(d + 1);
  ypow[0] = 1;
  for (std::size_t k = 1; k <= d; ++k) ypow[k] = ypow[k - 1] * p.y;
  return ProjPoint::make(eval_form(F_, p.x, ypow), eval_form(G_, p.x, ypow));
}

std::string EndoMap::to_string() const {
  if (kind_ == MapKind::polynomial) return orbitcensus::to_string(fn_.num);
  return "(" + orbitcensus::to_string(fn_.num) + ")/(" + orbitcensus::to_string(fn_.den) + ")";
}

ProjPoint evaluate(const EndoMap& phi, const ProjPoint& p) { return phi(p); }

namespace {

// Solves M·v = rhs over Q; M square and nonsingular.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw PreconditionError("singular Sylvester system: the map is not a morphism");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rat> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
  return out;
}

Rat log_upper(const Rat& v) {
  if (v <= 1) return Rat(0);
  return log(Interval(v)).upper_rat();
}

}  // namespace

HeightBoundDetail height_bound_detail(const EndoMap& phi) {
  const auto d = static_cast<std::size_t>(phi.degree());
  const auto& F = phi.F();
  const auto& G = phi.G();
  HeightBoundDetail out;
  Int nf = 0;
  Int ng = 0;
  for (const auto& z : F) nf += abs(z);
  for (const auto& z : G) ng += abs(z);
  out.norm_plus = nf > ng ? nf : ng;

  // Unknowns: A_0..A_{d-1}, B_0..B_{d-1}, with A = Σ A_k x^k y^{d-1-k}.
  // Equation for the x^j y^{2d-1-j} coefficient, j = 0..2d-1.
  const std::size_t n = 2 * d;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i <= d; ++i) {
      m[k + i][k] += Rat(F[i]);
      m[k + i][d + k] += Rat(G[i]);
    }
  }
  Rat best = 0;
  Int denom = 1;
  for (int which = 0; which < 2; ++which) {
    std::vector<Rat> rhs(n, Rat(0));
    rhs[which == 0 ? n - 1 : 0] = 1;
    auto sol = solve_linear(m, rhs);
    Rat norm = 0;
    for (const auto& q : sol) {
      norm += abs(q);
      denom = lcm(denom, q.get_den());
    }
    if (norm > best) best = norm;
  }
  out.norm_minus = best;
  out.denom = denom;
  out.c_plus = log_upper(Rat(out.norm_plus));
  out.c_minus = log_upper(best * Rat(denom));
  out.C = std::max(out.c_plus, out.c_minus);
  return out;
}

Rat height_bound(const EndoMap& phi) { return height_bound_detail(phi).C; }

Interval SetConstants::BS() const { return exp(Interval(bS)); }

SetConstants set_constants(const std::vector<EndoMap>& maps) {
  if (maps.empty()) throw InputError("a map set must be nonempty");
  SetConstants out;
  out.dS = maps.front().degree();
  out.CS = 0;
  for (const auto& phi : maps) {
    if (phi.degree() < 2)
      throw PreconditionError("map " + (phi.name().empty() ? phi.to_string() : phi.name()) +
                              " has degree " + std::to_string(phi.degree()) + " < 2");
    out.dS = std::min(out.dS, phi.degree());
    Rat c = height_bound(phi);
    out.per_map.push_back(c);
    if (c > out.CS) out.CS = c;
  }
  out.bS = out.CS / Rat(out.dS - 1);
  return out;
}

void check_digit_guard(const ProjPoint& p, std::size_t digit_limit) {
  std::size_t dig = std::max(decimal_digits(p.x), decimal_digits(p.y));
  if (dig > digit_limit)
    throw ResourceGuardError("iterate coordinates exceed " + std::to_string(digit_limit) + " decimal digits");
}

CanonicalHeight canonical_height(const EndoMap& phi, const ProjPoint& p, const Rat& tol,
                                 std::size_t digit_limit) {
  const long d = phi.degree();
  if (d < 2) throw PreconditionError("canonical height needs degree at least 2");
  if (tol <= 0) throw InputError("tolerance must be positive");
  const Rat b = height_bound(phi) / Rat(d - 1);
  std::set<ProjPoint> seen;
  bool tracking = true;
  ProjPoint q = p;
  Int dn = 1;
  long n = 0;
  for (;;) {
    if (tracking) {
      if (!seen.insert(q).second) return CanonicalHeight{Interval(Rat(0)), true, n};
      // Points of height above b wander (preperiodic points have h <= b).
      if (certainly_less(Interval(b), weil_height(q).h)) tracking = false;
    }
    Rat err = b / Rat(dn);
    if (err <= tol && !tracking) break;
    q = phi(q);
    check_digit_guard(q, digit_limit);
    dn *= d;
    ++n;
  }
  Interval val = weil_height(q).h / Interval(dn);
  Rat err = b / Rat(dn);
  Interval out = val + Interval(-err, err);
  return CanonicalHeight{out, false, n};
}

std::vector<long> MapSet::degrees() const {
  std::vector<long> out;
  for (const auto& f : nf_maps) out.push_back(f.degree());
  return out;
}

RatFn<NFElem> to_nf(const RatFn<Rat>& f) { return RatFn<NFElem>{to_nf(f.num), to_nf(f.den)}; }

MapSet MapSet::over_q(std::vector<EndoMap> maps) {
  MapSet s;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    s.names.push_back(maps[i].name().empty() ? "phi" + std::to_string(i + 1) : maps[i].name());
    s.nf_maps.push_back(to_nf(maps[i].fn()));
  }
  s.maps = std::move(maps);
  return s;
}

MapSet MapSet::over_field(NFElem::Modulus mod, std::vector<RatFn<NFElem>> maps, std::vector<std::string> names) {
  MapSet s;
  s.modulus = std::move(mod);
  s.nf_maps = std::move(maps);
  s.names = std::move(names);
  while (s.names.size() < s.nf_maps.size()) s.names.push_back("phi" + std::to_string(s.names.size() + 1));
  return s;
}

}  // namespace orbitcensus
