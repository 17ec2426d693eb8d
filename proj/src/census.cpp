#include "orbitcensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <set>

#include "orbitcensus/words.hpp"

namespace orbitcensus {

namespace {

void validate_parts(const std::vector<long>& parts) {
  for (long t : parts)
    if (t < 1) throw InputError("composition parts must be positive");
  std::vector<long> s = parts;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("composition parts must be distinct");
}

}  // namespace

std::vector<Int> composition_counts(const std::vector<long>& parts, long N) {
  validate_parts(parts);
  if (N < 0) return {};
  std::vector<Int> f(static_cast<std::size_t>(N) + 1, Int(0));
  f[0] = 1;
  for (long n = 1; n <= N; ++n)
    for (long t : parts)
      if (t <= n) f[static_cast<std::size_t>(n)] += f[static_cast<std::size_t>(n - t)];
  return f;
}

Int count_exact(const std::vector<long>& parts, long n) {
  if (n < 0) throw InputError("n must be nonnegative");
  return composition_counts(parts, n).back();
}

Int partial_sum_counts(const std::vector<long>& parts, long M) {
  Int acc = 0;
  for (const auto& v : composition_counts(parts, M)) acc += v;
  return acc;
}

namespace {

Int words_up_to(const std::vector<long>& degrees, const Int& D, std::map<Int, Int>& memo) {
  if (D < 1) return Int(0);
  auto it = memo.find(D);
  if (it != memo.end()) return it->second;
  // A nonempty word is θ·rest with deg(rest) ≤ floor(D / d_θ).
  Int acc = 1;
  for (long d : degrees) {
    Int q = D / d;
    acc += words_up_to(degrees, q, memo);
  }
  memo.emplace(D, acc);
  return acc;
}

}  // namespace

Int count_words_exact(const std::vector<long>& degrees, const Int& max_degree) {
  for (long d : degrees)
    if (d < 2) throw InputError("word counting needs every degree >= 2");
  std::map<Int, Int> memo;
  return words_up_to(degrees, max_degree, memo);
}

Int count_words_exact(const std::vector<long>& degrees, double B) {
  return count_words_exact(degrees, degree_cap_from_log(B));
}

DominantTerm dominant_term(const std::vector<long>& parts, std::optional<Rat> width) {
  DominantTerm out{dominant_root(parts, width), Interval()};
  Interval a = out.alpha.interval();
  out.kappa = -(Interval(1L) / (a * eval_composition_derivative(parts, a)));
  return out;
}

namespace {

long max_part(const std::vector<long>& parts) { return *std::max_element(parts.begin(), parts.end()); }

struct Residues {
  bool available = false;
  double second_modulus = std::numeric_limits<double>::quiet_NaN();
  double mass = std::numeric_limits<double>::quiet_NaN();  // Σ |A_j| over non-dominant roots
};

// A_j = −1/(z_j (1 − z_j) g′(z_j)) from floating roots of g = 1 − Σ z^{t}.
Residues subdominant_residues(const std::vector<long>& parts, const Rat& alpha) {
  Residues out;
  if (max_part(parts) > 1024) return out;
  using C = std::complex<long double>;
  auto roots = approximate_complex_roots(composition_denominator(parts));
  const long double a = alpha.get_d();
  std::size_t dom = 0;
  for (std::size_t k = 1; k < roots.size(); ++k)
    if (std::abs(roots[k] - a) < std::abs(roots[dom] - a)) dom = k;
  long double mass = 0;
  long double second = std::numeric_limits<long double>::infinity();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (k == dom) continue;
    const C z = roots[k];
    C gp = 0;
    for (long t : parts) gp -= static_cast<long double>(t) * std::pow(z, static_cast<int>(t - 1));
    mass += std::abs(C(-1) / (z * (C(1) - z) * gp));
    second = std::min(second, std::abs(z));
  }
  out.available = true;
  out.mass = static_cast<double>(mass * (1 + 1e-6L));
  out.second_modulus = static_cast<double>(second * (1 - 1e-6L));
  return out;
}

bool certified_simple_roots(const std::vector<long>& parts) {
  if (parts.size() == 2) return true;  // trinomials 1 − z^a − z^b with a ≠ b have nonzero discriminant
  if (max_part(parts) > 400) return false;
  return is_squarefree(composition_denominator(parts));
}

std::vector<long> to_longs(const std::vector<Int>& v) {
  std::vector<long> out;
  for (const auto& z : v) {
    if (!z.fits_slong_p()) throw ResourceGuardError("approximation numerators exceed the machine word range");
    out.push_back(z.get_si());
  }
  return out;
}

}  // namespace

BoundReport build_bound_report(const std::vector<long>& degrees, const ApproxResult& approx) {
  BoundReport r;
  r.degrees = degrees;
  r.approx = approx;
  const std::vector<long> n = to_longs(approx.n);
  const std::vector<long> m = to_longs(approx.m);
  const long s = static_cast<long>(degrees.size());
  const Interval U(approx.u);
  // Relative accuracy in b = −u log α needs root width well below 1/u.
  Rat width = Rat(1) / (Rat(approx.u) * Rat(Int(1) << 64));

  DominantTerm tn = dominant_term(n, width);
  DominantTerm tm = dominant_term(m, width);
  r.alpha1 = tn.alpha;
  r.beta1 = tm.alpha;
  Interval a = r.alpha1.interval();
  Interval b = r.beta1.interval();
  Interval one(1L);

  r.kappa1 = tm.kappa;
  r.kappa2 = r.kappa1 / (one - b);
  r.kappa5 = r.kappa2 * b;
  r.kappa4 = one / Interval(s - 1);
  r.tau1 = tn.kappa;
  r.tau2 = r.tau1 / (one - a);
  r.tau5 = r.tau2 / a;
  r.tau4 = Interval(0L);

  r.b1 = -(U * log(b));
  r.b2 = -(U * log(a));
  r.C1 = exp(r.b1);
  r.C3 = exp(r.b2);

  r.simple_roots = certified_simple_roots(n) && certified_simple_roots(m);
  if (!r.simple_roots) {
    r.r3 = max_part(m) - 1;
    r.r4 = max_part(n) - 1;
  }
  Residues rm = subdominant_residues(m, r.beta1.lower);
  Residues rn = subdominant_residues(n, r.alpha1.lower);
  r.subdominant_available = r.simple_roots && rm.available && rn.available;
  if (rm.available) r.beta2_modulus = rm.second_modulus;
  if (rn.available) r.alpha2_modulus = rn.second_modulus;
  if (r.subdominant_available) {
    r.kappa3 = Interval::from_double(rm.mass);
    r.kappa6 = r.kappa3 * Interval::from_double(std::max(1.0, rm.second_modulus));
    r.tau3 = Interval::from_double(rn.mass);
    r.tau6 = r.tau3 * Interval::from_double(std::max(1.0, rn.second_modulus));
    r.C2 = exp(-(U * log(Interval::from_double(rm.second_modulus))));
    r.C4 = exp(-(U * log(Interval::from_double(rn.second_modulus))));
    // Without C2 < C1 the remainder is never dominated and no threshold exists.
    if (certainly_less(r.C2, r.C1)) {
      double t1 = std::log(2 * r.kappa6.mid() / r.kappa5.mid()) / std::log(r.C1.mid() / r.C2.mid());
      double t2 = std::log(2 * r.kappa4.mid() / r.kappa5.mid()) / r.b1.mid();
      r.validity_threshold = std::max({0.0, t1, t2});
    } else {
      r.validity_threshold = std::numeric_limits<double>::infinity();
    }
  } else {
    r.validity_threshold = std::numeric_limits<double>::infinity();
  }

  std::vector<long> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  GapCrude gc = gap_and_crude_bounds(s, log_int(Int(sorted.front())), approx.delta);
  r.gap_bound = gc.gap_bound;
  r.crude_bound = gc.crude_bound;
  return r;
}

BoundReport build_bound_report(const std::vector<long>& degrees, const Rat& delta) {
  std::vector<long> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  auto targets = log_targets(sorted, delta / 8);
  return build_bound_report(sorted, approximate_with_gcd(targets, delta));
}

CountBounds function_count_bounds(const BoundReport& r, const Interval& B) {
  CountBounds out;
  Interval Bl(B.lower_rat());
  Interval Bu(B.upper_rat());
  out.upper = r.tau5 * exp(r.b2 * Bu) + r.tau4;
  if (r.subdominant_available) {
    Interval logC4 = log(r.C4);
    Interval rem = r.tau6 * exp(logC4 * Bu);
    if (r.r4 > 0) rem *= pow(max(Bu, Interval(1L)), static_cast<unsigned long>(r.r4));
    out.upper += rem;
  } else {
    out.upper_available = false;
  }
  if (!r.subdominant_available) {
    out.lower_available = false;
    out.lower = Interval(0L);
  } else if (B.lower_rat() < 0) {
    out.lower = Interval(0L);
  } else {
    Interval rem = r.kappa6 * exp(log(r.C2) * Bl);
    if (r.r3 > 0) rem *= pow(max(Bl, Interval(1L)), static_cast<unsigned long>(r.r3));
    out.lower = r.kappa5 * exp(r.b1 * Bl) - rem - r.kappa4;
  }
  out.above_threshold = r.subdominant_available && B.lo() >= r.validity_threshold;
  return out;
}

HeightCountBounds height_count_bounds(const BoundReport& r, const Interval& hP, const Interval& logB, const Rat& bS) {
  Interval lo_den = hP + Interval(bS);
  Interval up_den = hP - Interval(bS);
  if (!up_den.certainly_positive())
    throw PreconditionError("height count bounds need h(P) > b_S = " + Interval(bS).to_string(10));
  if (!logB.certainly_positive()) throw PreconditionError("height count bounds need B > 1");
  HeightCountBounds out;
  out.a1 = r.kappa5 / exp(r.b1 * log(lo_den));
  out.a2 = r.tau5 / exp(r.b2 * log(up_den));
  out.log_degree_lower = log(logB / lo_den);
  out.log_degree_upper = log(logB / up_den);
  CountBounds lower = function_count_bounds(r, out.log_degree_lower);
  CountBounds upper = function_count_bounds(r, out.log_degree_upper);
  out.counts.lower = lower.lower;
  out.counts.lower_available = lower.lower_available;
  out.counts.upper = upper.upper;
  out.counts.upper_available = upper.upper_available;
  out.counts.above_threshold = lower.above_threshold;
  return out;
}

GapCrude gap_and_crude_bounds(long s, const Interval& c1, const Rat& delta) {
  if (s < 2) throw PreconditionError("gap bound needs s >= 2");
  if (delta <= 0) throw InputError("delta must be positive");
  Interval d(delta);
  if (!certainly_less(d, c1)) throw PreconditionError("gap bound needs delta < c_1");
  Interval q = Interval(1L) / Interval(s);
  Interval e1 = Interval(2L) * d / (c1 - d);
  Interval e2 = (c1 + d) / (c1 - d);
  GapCrude out{Interval(s) / c1 * (Interval(1L) - pow(q, e1)) / pow(q, e2),
               log(Interval(s)) / (c1 - Interval(Rat(1, 10)))};
  return out;
}

SingleMapCount single_map_count_bounds(const EndoMap& phi, const ProjPoint& p, const Int& B, const Rat& tol,
                                       std::size_t digit_limit) {
  const long d = phi.degree();
  if (d < 2) throw PreconditionError("single-map counting needs degree >= 2");
  if (B < 1) throw InputError("height bound B must be at least 1");
  SingleMapCount out;
  out.c_phi = height_bound(phi) / Rat(d - 1);
  CanonicalHeight ch = canonical_height(phi, p, tol, digit_limit);
  out.canonical_height = ch.value;
  if (ch.preperiodic) {
    out.preperiodic = true;
    std::set<ProjPoint> seen;
    ProjPoint q = p;
    out.exact_count = 0;
    while (seen.insert(q).second) {
      if (height_H(q) <= B) ++out.exact_count;
      q = phi(q);
    }
    out.window_lower = out.window_upper = out.exact_count;
    return out;
  }
  if (!ch.value.certainly_positive())
    throw PreconditionError("canonical height enclosure does not exclude 0; tighten the tolerance");
  Interval logB = log_int(B);
  Interval logd = log_int(Int(d));
  Interval c(out.c_phi);
  auto window = [&](const Interval& num, bool lower_side) -> Int {
    Rat x = lower_side ? (num / Interval(ch.value.upper_rat())).lower_rat()
                       : (num / Interval(ch.value.lower_rat())).upper_rat();
    if (x < 1) return Int(0);
    Interval q = log(Interval(x)) / logd;
    return (lower_side ? floor_rat(q.lower_rat()) : floor_rat(q.upper_rat())) + 1;
  };
  Interval lo_num = logB - c;
  out.window_lower = lo_num.certainly_positive() ? window(lo_num, true) : Int(0);
  out.window_upper = window(logB + c, false);
  out.exact_count = 0;
  ProjPoint q = p;
  for (Int n = 0; n < out.window_upper; ++n) {
    if (height_H(q) <= B) ++out.exact_count;
    q = phi(q);
    check_digit_guard(q, digit_limit);
  }
  return out;
}

MultiplicityBound multiplicity_bound(long s, long dmax, const Rat& kappaP, const Rat& hP, const Rat& bS) {
  if (bS <= 0) throw PreconditionError("multiplicity bound needs b_S > 0");
  if (kappaP <= 0) throw InputError("kappa_P must be positive");
  if (hP <= 2 * bS) throw PreconditionError("multiplicity bound needs h(P) > 2 b_S");
  if (s < 1 || dmax < 2) throw InputError("multiplicity bound needs s >= 1 and d_max >= 2");
  MultiplicityBound out;
  out.r_P = std::max(1L, ceil_log2(kappaP / bS));
  Int dpow = 1;
  for (long k = 0; k <= out.r_P; ++k) dpow *= dmax;
  Int twopow = Int(1) << static_cast<mp_bitcnt_t>(out.r_P + 1);
  out.height_threshold = Rat(dpow) * (hP + bS);
  out.X = out.height_threshold / (Rat(twopow - 1) * bS);
  Interval ceilX(ceil_rat(out.X));
  Interval expo = log(ceilX) / log(Interval(2L)) + Interval(out.r_P + 1);
  out.t_bound = exp(expo * log(Interval(s)));
  return out;
}

}  // namespace orbitcensus
