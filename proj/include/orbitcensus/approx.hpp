#pragma once

#include <optional>
#include <vector>

#include "orbitcensus/exactnum/interval.hpp"

namespace orbitcensus {

/// A real target c known to lie in [lo, hi].
struct TargetEnclosure {
  Rat lo;
  Rat hi;
};

/// Integers with c_i − δ ≤ n_i/u < c_i < m_i/u ≤ c_i + δ and
/// gcd(n_1..n_s) = 1 = gcd(m_1..m_s).
struct ApproxResult {
  std::vector<Int> n;
  std::vector<Int> m;
  Int u;
  Rat delta;
  long deformation_power = 0;  // r of the gcd deformation, 0 if none was needed
  bool increasing = false;     // n_1 < … < n_s and m_1 < … < m_s
  bool interleaved = false;    // n_s < m_1 as well
  bool ordering_guaranteed = false;  // δ < min gap/2 and δ < c_1
};

/// Enclosures of log d_i narrower than `width`.
std::vector<TargetEnclosure> log_targets(const std::vector<long>& degrees, const Rat& width);

/// Constructive approximation: a base u with strict sandwiching (searched
/// upward from 1 unless supplied), then the gcd deformation
/// v = (n_2⋯n_s m_2⋯m_s u)^r, n_1' = n_1 v + 1, m_1' = m_1 v + 1, u' = u v,
/// with r increased from 1 until the sandwich holds again.
ApproxResult approximate_with_gcd(const std::vector<TargetEnclosure>& targets, const Rat& delta,
                                  std::optional<Int> base_u = std::nullopt);

/// Takes explicit fractions n_i/u, m_i/u; δ is max_i (m_i − n_i)/u. The
/// fractions are returned unchanged when they already satisfy both conditions
/// for the targets, and deformed otherwise.
ApproxResult approximate_from_fractions(const std::vector<TargetEnclosure>& targets, const std::vector<Int>& n,
                                        const std::vector<Int>& m, const Int& u);

/// Exact check of every ApproxResult invariant against the enclosures.
bool verify_approx(const ApproxResult& a, const std::vector<TargetEnclosure>& targets);

}  // namespace orbitcensus
