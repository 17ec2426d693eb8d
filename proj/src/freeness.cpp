#include "orbitcensus/freeness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace orbitcensus {

namespace {

std::vector<Int> coprime_basis(std::vector<Int> xs) {
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](const Int& z) { return z <= 1; }), xs.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
        Int g = gcd(xs[i], xs[j]);
        if (g == 1) continue;
        Int a = xs[i] / g;
        Int b = xs[j] / g;
        xs.erase(xs.begin() + static_cast<long>(j));
        xs.erase(xs.begin() + static_cast<long>(i));
        for (const Int& z : {g, a, b})
          if (z > 1) xs.push_back(z);
        changed = true;
      }
    }
  }
  return xs;
}

long valuation(Int z, const Int& p) {
  z = abs(z);
  long v = 0;
  while (z % p == 0) {
    z /= p;
    ++v;
  }
  return v;
}

// One nonzero integer vector in the kernel of an integer matrix, if any.
std::optional<std::vector<Int>> integer_kernel_vector(const std::vector<std::vector<Rat>>& rows, std::size_t cols) {
  std::vector<std::vector<Rat>> m = rows;
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || sgn(m[k][c]) == 0) continue;
      Rat f = m[k][c];
      for (std::size_t j = 0; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    pivot_of_col[c] = static_cast<long>(r);
    ++r;
  }
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[free] = 1;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_col[c] >= 0) v[c] = -m[static_cast<std::size_t>(pivot_of_col[c])][free];
    Int den = 1;
    for (const auto& q : v) den = lcm(den, q.get_den());
    std::vector<Int> out;
    for (const auto& q : v) out.push_back(Rat(q * den).get_num());
    Int g = gcd_all(out);
    for (auto& z : out) z /= g;
    auto lead = std::find_if(out.begin(), out.end(), [](const Int& z) { return z != 0; });
    if (*lead < 0)
      for (auto& z : out) z = -z;
    return out;
  }
  return std::nullopt;
}

}  // namespace

IndependenceResult mult_indep_check(const std::vector<Rat>& values) {
  std::vector<Int> parts;
  for (const auto& v : values) {
    if (sgn(v) == 0) throw InputError("multiplicative independence of 0 is undefined");
    parts.push_back(abs(v.get_num()));
    parts.push_back(v.get_den());
  }
  IndependenceResult out;
  out.basis = coprime_basis(parts);
  std::vector<std::vector<Rat>> rows;
  for (const auto& p : out.basis) {
    std::vector<Rat> row;
    for (const auto& v : values) row.emplace_back(valuation(v.get_num(), p) - valuation(v.get_den(), p));
    rows.push_back(std::move(row));
  }
  auto ker = integer_kernel_vector(rows, values.size());
  if (!ker) return out;
  out.independent = false;
  // The kernel kills absolute values; double it if the signs multiply to −1.
  int sign = 1;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (sgn(values[i]) < 0 && mpz_odd_p((*ker)[i].get_mpz_t())) sign = -sign;
  if (sign < 0)
    for (auto& z : *ker) z *= 2;
  out.witness = std::move(*ker);
  return out;
}

IndependenceResult mult_indep_check(const std::vector<Int>& values) {
  std::vector<Rat> qs(values.begin(), values.end());
  return mult_indep_check(qs);
}

UniPoly chebyshev_poly(unsigned n) {
  if (n == 0) return UniPoly(Rat(2));
  UniPoly prev(Rat(2));
  UniPoly cur = UniPoly::x();
  for (unsigned k = 1; k < n; ++k) {
    UniPoly next = UniPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

UniPoly scaled_chebyshev(unsigned n, const Rat& a_squared) {
  if (sgn(a_squared) == 0) throw InputError("Chebyshev scaling must be nonzero");
  UniPoly t = chebyshev_poly(n);
  std::vector<Rat> cs(t.coeffs());
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (sgn(cs[k]) == 0) continue;
    unsigned j = (n - static_cast<unsigned>(k)) / 2;
    Rat p = 1;
    for (unsigned i = 0; i < j; ++i) p /= a_squared;
    cs[k] *= p;
  }
  return UniPoly(std::move(cs));
}

std::optional<UniPoly> DecompositionReport::rational_linear() const {
  if (!found) return std::nullopt;
  if (sgn(a_squared) <= 0) return std::nullopt;
  if (!mpz_perfect_square_p(a_squared.get_num().get_mpz_t()) || !mpz_perfect_square_p(a_squared.get_den().get_mpz_t()))
    return std::nullopt;
  Int num = sqrt(a_squared.get_num());
  Int den = sqrt(a_squared.get_den());
  Rat a(num, den);
  a.canonicalize();
  return UniPoly({-a * shift, a});
}

std::optional<std::pair<UniPoly, UniPoly>> right_factor(const UniPoly& f, unsigned n) {
  const long d = f.degree();
  if (n < 1 || d < 1 || d % static_cast<long>(n) != 0) return std::nullopt;
  const long k = d / static_cast<long>(n);
  // Reversed series of f/lc starts 1 + ...; its k-th root mod x^n gives h reversed.
  const Rat lc = f.lead();
  std::vector<Rat> A(n, Rat(0));
  for (unsigned i = 0; i < n; ++i) A[i] = f.coeff(static_cast<std::size_t>(d - i)) / lc;
  std::vector<Rat> Bc(n, Rat(0));
  Bc[0] = 1;
  const Rat alpha(1, k);
  for (unsigned m = 1; m < n; ++m) {
    Rat acc = 0;
    for (unsigned j = 1; j <= m; ++j) acc += (alpha * Rat(j) - Rat(m) + Rat(j)) * A[j] * Bc[m - j];
    Bc[m] = acc / Rat(m);
  }
  std::vector<Rat> hc(n + 1, Rat(0));
  for (unsigned i = 0; i < n; ++i) hc[n - i] = Bc[i];
  UniPoly h(std::move(hc));
  std::vector<Rat> Fc;
  UniPoly r = f;
  while (!r.is_zero()) {
    auto [q, rem] = divrem(r, h);
    if (rem.degree() > 0) return std::nullopt;
    Fc.push_back(rem.coeff(0));
    r = std::move(q);
  }
  UniPoly F(std::move(Fc));
  if (F.compose(h) != f) return std::nullopt;
  return std::make_pair(std::move(h), std::move(F));
}

DecompositionReport detect_cyclic_inner(const UniPoly& f) {
  DecompositionReport out;
  const long d = f.degree();
  if (d < 2) throw InputError("inner-factor detection needs degree >= 2");
  out.shift = -f.coeff(static_cast<std::size_t>(d - 1)) / (Rat(d) * f.lead());
  UniPoly g = f.shift(out.shift);
  long n = 0;
  for (long k = 1; k <= d; ++k)
    if (!is_zero(g.coeff(static_cast<std::size_t>(k)))) n = std::gcd(n, k);
  if (n < 2) return out;
  std::vector<Rat> Fc;
  for (long k = 0; k <= d; k += n) Fc.push_back(g.coeff(static_cast<std::size_t>(k)));
  out.found = true;
  out.n = static_cast<unsigned>(n);
  out.kind = InnerKind::cyclic;
  out.inner = pow(UniPoly({-out.shift, Rat(1)}), static_cast<unsigned long>(n));
  out.outer = UniPoly(std::move(Fc));
  if (out.reconstruct() != f) throw std::logic_error("cyclic decomposition failed to reconstruct");
  return out;
}

DecompositionReport detect_chebyshev_inner(const UniPoly& f, unsigned min_n) {
  DecompositionReport out;
  const long d = f.degree();
  if (d < 2) throw InputError("inner-factor detection needs degree >= 2");
  for (long n = std::max(2L, static_cast<long>(min_n)); n <= d; ++n) {
    if (d % n != 0) continue;
    auto rf = right_factor(f, static_cast<unsigned>(n));
    if (!rf) continue;
    const UniPoly& h = rf->first;
    Rat t = -h.coeff(static_cast<std::size_t>(n - 1)) / Rat(n);
    UniPoly k = h.shift(t);
    Rat A = 1;
    if (n >= 3) {
      Rat k2 = k.coeff(static_cast<std::size_t>(n - 2));
      if (is_zero(k2)) continue;
      A = -Rat(n) / k2;
    }
    UniPoly S = scaled_chebyshev(static_cast<unsigned>(n), A);
    Rat e = k.coeff(0) - S.coeff(0);
    if (k != S + UniPoly(e)) continue;
    out.found = true;
    out.n = static_cast<unsigned>(n);
    out.kind = InnerKind::chebyshev;
    out.shift = t;
    out.a_squared = A;
    out.offset = e;
    out.inner = h;
    out.outer = rf->second;
    return out;
  }
  return out;
}

namespace {

UniPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  UniPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis(Rat(1));
    Rat denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly({-xs[j], Rat(1)});
      denom *= xs[i] - xs[j];
    }
    acc += basis * (ys[i] / denom);
  }
  return acc;
}

}  // namespace

CriticalProfile critical_profile(const EndoMap& phi) {
  const UniPoly& P = phi.num();
  const UniPoly& Q = phi.den();
  const long d = phi.degree();
  std::vector<Rat> ts, vals;
  for (long t = 0; static_cast<long>(ts.size()) < 2 * d - 1; ++t) {
    UniPoly ft = P - Q * Rat(t);
    if (ft.degree() < d) continue;
    ts.emplace_back(t);
    vals.push_back(discriminant(ft));
  }
  CriticalProfile out;
  out.D = interpolate(ts, vals);
  if (out.D.is_zero()) throw std::logic_error("critical-value discriminant vanished identically");
  out.squarefree = out.D.degree() == 0 || is_squarefree(out.D);
  long affine_poles = Q.degree() - squarefree_part(Q).degree();
  long at_infinity = std::max(0L, P.degree() - Q.degree() - 1);
  out.infinity_ramification = affine_poles + at_infinity;
  return out;
}

CriticalReport critical_separation_check(const std::vector<EndoMap>& maps) {
  CriticalReport out;
  for (const auto& phi : maps) out.profiles.push_back(critical_profile(phi));
  for (const auto& p : out.profiles)
    if (!p.squarefree || p.infinity_ramification > 1) out.simple = false;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    for (std::size_t j = i + 1; j < maps.size(); ++j) {
      const auto& a = out.profiles[i];
      const auto& b = out.profiles[j];
      bool finite_overlap = gcd(a.D, b.D).degree() > 0;
      bool both_at_infinity = a.infinity_ramification > 0 && b.infinity_ramification > 0;
      if (finite_overlap || both_at_infinity) {
        out.separate = false;
        out.colliding_pairs.emplace_back(i, j);
      }
    }
  }
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

bool contains_factor(const Word& w, const Word& pat) {
  if (pat.size() > w.size()) return false;
  return std::search(w.begin(), w.end(), pat.begin(), pat.end()) != w.end();
}

long fn_degree_guarded(long a, long b, const Int& cap, bool& over) {
  Int p = Int(a) * b;
  if (p > cap) {
    over = true;
    return 0;
  }
  return p.get_si();
}

}  // namespace

RelationSearch find_relations(const MapSet& s, std::size_t max_len, const Int& degree_cap) {
  if (max_len < 2) throw InputError("relation search needs max length >= 2");
  RelationSearch out;
  struct Entry {
    Word w;
    long degree;
    RatFn<NFElem> fn;
  };
  std::vector<Entry> all;
  std::vector<Entry> layer;
  for (std::size_t i = 0; i < s.size(); ++i) layer.push_back({Word{i}, s.nf_maps[i].degree(), s.nf_maps[i]});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    all.insert(all.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    std::vector<Entry> next;
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (const auto& e : layer) {
        bool over = false;
        long deg = fn_degree_guarded(s.nf_maps[i].degree(), e.degree, degree_cap, over);
        if (over) {
          out.truncated = true;
          continue;
        }
        Word w{i};
        w.insert(w.end(), e.w.begin(), e.w.end());
        next.push_back({std::move(w), deg, s.nf_maps[i].compose(e.fn)});
      }
    }
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return shortlex_less(a.w, b.w); });
  // Earlier words of each degree, one per distinct composite.
  std::map<long, std::vector<std::size_t>> reps;
  for (std::size_t idx = 0; idx < all.size(); ++idx) {
    const Entry& e = all[idx];
    auto& bucket = reps[e.degree];
    std::optional<std::size_t> match;
    for (std::size_t r : bucket) {
      ++out.words_compared;
      if (all[r].fn == e.fn) {
        match = r;
        break;
      }
    }
    if (!match) {
      bucket.push_back(idx);
      continue;
    }
    bool reducible = false;
    for (const auto& rel : out.relations)
      if (contains_factor(e.w, rel.lhs)) reducible = true;
    if (!reducible) out.relations.push_back({e.w, all[*match].w});
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::free: return "free";
    case Verdict::not_free: return "not-free";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::polynomial_independence: return "polynomial-independence";
    case Criterion::rational_critical: return "rational-critical";
    case Criterion::relation_found: return "relation-found";
    case Criterion::none: return "none";
  }
  return "none";
}

namespace {

// Smallest k ≤ limit with a^k = 1.
std::optional<long> torsion_order(const NFElem& a, long limit) {
  NFElem p = a;
  for (long k = 1; k <= limit; ++k) {
    if (p == NFElem(1)) return k;
    p = p * a;
  }
  return std::nullopt;
}

}  // namespace

FreenessCertificate freeness_certificate(const MapSet& s, std::size_t max_len) {
  FreenessCertificate cert;
  bool all_poly = std::all_of(s.nf_maps.begin(), s.nf_maps.end(), [](const auto& f) { return f.is_polynomial(); });
  if (all_poly) {
    std::vector<Int> degs;
    for (long d : s.degrees()) degs.emplace_back(d);
    cert.degree_check = mult_indep_check(degs);
    std::vector<Rat> lcs;
    bool rational = true;
    for (const auto& f : s.nf_maps) {
      auto q = (f.num.lead() / f.den.lead()).as_rational();
      if (!q) {
        rational = false;
        break;
      }
      lcs.push_back(*q);
    }
    if (rational) {
      cert.coefficient_check = mult_indep_check(lcs);
    } else {
      for (std::size_t i = 0; i < s.nf_maps.size(); ++i) {
        const auto& f = s.nf_maps[i];
        NFElem a = f.num.lead() / f.den.lead();
        if (auto k = torsion_order(a, 1000)) {
          IndependenceResult r;
          r.independent = false;
          r.witness.assign(s.size(), Int(0));
          r.witness[i] = *k;
          cert.coefficient_check = r;
          break;
        }
      }
      if (!cert.coefficient_check)
        cert.notes.push_back("leading coefficients outside Q without torsion: independence not decided");
    }
    if (cert.degree_check->independent && cert.coefficient_check && cert.coefficient_check->independent) {
      cert.verdict = Verdict::free;
      cert.criterion = Criterion::polynomial_independence;
      return cert;
    }
  }
  if (!s.over_number_field()) {
    auto degs = s.degrees();
    if (std::all_of(degs.begin(), degs.end(), [](long d) { return d >= 4; })) {
      cert.critical = critical_separation_check(s.maps);
      if (cert.critical->separate && cert.critical->simple) {
        cert.verdict = Verdict::free;
        cert.criterion = Criterion::rational_critical;
        return cert;
      }
    } else if (!all_poly) {
      cert.notes.push_back("critical criterion needs every degree >= 4");
    }
  }
  RelationSearch rs = find_relations(s, max_len);
  if (!rs.relations.empty()) {
    cert.verdict = Verdict::not_free;
    cert.criterion = Criterion::relation_found;
    cert.relations = std::move(rs.relations);
    return cert;
  }
  cert.notes.push_back("no relation among words of length <= " + std::to_string(max_len));
  return cert;
}

}  // namespace orbitcensus
