#include "orbitcensus/approx.hpp"

namespace orbitcensus {

namespace {

void validate_targets(const std::vector<TargetEnclosure>& t, const Rat& delta) {
  if (t.size() < 2)
    throw PreconditionError("simultaneous approximation needs s >= 2 targets (s = 1 forces m_1 = 1)");
  if (delta <= 0) throw InputError("delta must be positive");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].lo > t[i].hi) throw InputError("target enclosure with lo > hi");
    if (t[i].lo <= 0) throw InputError("targets must be positive");
    if (4 * (t[i].hi - t[i].lo) >= delta) throw PreconditionError("target enclosure wider than delta/4");
    if (i > 0 && t[i - 1].hi >= t[i].lo) throw InputError("targets must be distinct and increasing");
  }
}

// Strict sandwich for every c in [lo, hi].
bool sandwich_ok(const std::vector<TargetEnclosure>& t, const Rat& delta, const std::vector<Int>& n,
                 const std::vector<Int>& m, const Int& u) {
  Rat U(u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    Rat lo_frac = Rat(n[i]) / U;
    Rat hi_frac = Rat(m[i]) / U;
    if (n[i] < 1 || m[i] < 1) return false;
    if (!(lo_frac < t[i].lo)) return false;
    if (!(t[i].hi < hi_frac)) return false;
    if (lo_frac < t[i].hi - delta) return false;
    if (hi_frac > t[i].lo + delta) return false;
  }
  return true;
}

bool base_at(const std::vector<TargetEnclosure>& t, const Rat& delta, const Int& u, std::vector<Int>& n,
             std::vector<Int>& m) {
  n.assign(t.size(), Int(0));
  m.assign(t.size(), Int(0));
  Rat U(u);
  for (std::size_t i = 0; i < t.size(); ++i) {
    n[i] = ceil_rat(U * t[i].lo) - 1;
    m[i] = floor_rat(U * t[i].hi) + 1;
  }
  return sandwich_ok(t, delta, n, m, u);
}

void fill_flags(ApproxResult& a, const std::vector<TargetEnclosure>& t) {
  const std::size_t s = a.n.size();
  a.increasing = true;
  for (std::size_t i = 1; i < s; ++i)
    if (!(a.n[i - 1] < a.n[i]) || !(a.m[i - 1] < a.m[i])) a.increasing = false;
  a.interleaved = a.increasing && a.n[s - 1] < a.m[0];
  Rat min_gap = t[1].lo - t[0].hi;
  for (std::size_t i = 2; i < t.size(); ++i) min_gap = std::min(min_gap, Rat(t[i].lo - t[i - 1].hi));
  a.ordering_guaranteed = 2 * a.delta < min_gap && a.delta < t[0].lo;
}

ApproxResult deform(const std::vector<TargetEnclosure>& t, const Rat& delta, std::vector<Int> n, std::vector<Int> m,
                    Int u) {
  ApproxResult out;
  out.delta = delta;
  if (gcd_all(n) == 1 && gcd_all(m) == 1) {
    out.n = std::move(n);
    out.m = std::move(m);
    out.u = std::move(u);
    fill_flags(out, t);
    return out;
  }
  Int base = u;
  for (std::size_t i = 1; i < n.size(); ++i) base *= n[i] * m[i];
  Int v = 1;
  for (long r = 1; r <= 64; ++r) {
    v *= base;
    std::vector<Int> n2(n.size()), m2(m.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
      n2[i] = n[i] * v;
      m2[i] = m[i] * v;
    }
    n2[0] += 1;
    m2[0] += 1;
    Int u2 = u * v;
    if (sandwich_ok(t, delta, n2, m2, u2)) {
      out.n = std::move(n2);
      out.m = std::move(m2);
      out.u = std::move(u2);
      out.deformation_power = r;
      fill_flags(out, t);
      return out;
    }
  }
  throw ResourceGuardError("gcd deformation did not restore the sandwich within 64 steps");
}

}  // namespace

std::vector<TargetEnclosure> log_targets(const std::vector<long>& degrees, const Rat& width) {
  std::vector<TargetEnclosure> out;
  for (long d : degrees) {
    if (d < 2) throw InputError("log targets need degrees >= 2");
    Interval l = log_enclosure(Int(d), width);
    out.push_back({l.lower_rat(), l.upper_rat()});
  }
  return out;
}

ApproxResult approximate_with_gcd(const std::vector<TargetEnclosure>& targets, const Rat& delta,
                                  std::optional<Int> base_u) {
  validate_targets(targets, delta);
  std::vector<Int> n, m;
  if (base_u) {
    if (*base_u < 1) throw InputError("base denominator must be positive");
    if (!base_at(targets, delta, *base_u, n, m))
      throw PreconditionError("supplied base denominator does not sandwich the targets");
    return deform(targets, delta, n, m, *base_u);
  }
  // Some u ≤ 2/δ + 1 works: every target window has length ≥ δ/2 > 2/u.
  Int limit = ceil_rat(Rat(8) / delta) + 8;
  for (Int u = 1; u <= limit; ++u)
    if (base_at(targets, delta, u, n, m)) return deform(targets, delta, n, m, u);
  throw ResourceGuardError("no base denominator found");
}

ApproxResult approximate_from_fractions(const std::vector<TargetEnclosure>& targets, const std::vector<Int>& n,
                                        const std::vector<Int>& m, const Int& u) {
  if (n.size() != targets.size() || m.size() != targets.size())
    throw InputError("fraction lists must match the number of targets");
  if (u < 1) throw InputError("denominator must be positive");
  Rat delta = 0;
  for (std::size_t i = 0; i < n.size(); ++i) delta = std::max(delta, Rat(Rat(m[i] - n[i]) / Rat(u)));
  if (targets.size() < 2) throw PreconditionError("simultaneous approximation needs s >= 2 targets");
  if (!sandwich_ok(targets, delta, n, m, u))
    throw PreconditionError("supplied fractions do not strictly sandwich the targets");
  return deform(targets, delta, n, m, u);
}

bool verify_approx(const ApproxResult& a, const std::vector<TargetEnclosure>& targets) {
  if (a.n.size() != targets.size() || a.m.size() != targets.size()) return false;
  if (!sandwich_ok(targets, a.delta, a.n, a.m, a.u)) return false;
  return gcd_all(a.n) == 1 && gcd_all(a.m) == 1;
}

}  // namespace orbitcensus
