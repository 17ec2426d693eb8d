#pragma once

#include <optional>
#include <vector>

#include "orbitcensus/approx.hpp"
#include "orbitcensus/exactnum/roots.hpp"
#include "orbitcensus/maps.hpp"

namespace orbitcensus {

/// f_0..f_N for compositions with parts in T: f_n = Σ_{t∈T} f_{n−t}, f_0 = 1.
std::vector<Int> composition_counts(const std::vector<long>& parts, long N);
Int count_exact(const std::vector<long>& parts, long n);
/// Σ_{k=0}^{M} f_k (0 when M < 0).
Int partial_sum_counts(const std::vector<long>& parts, long M);

/// Number of words over generators of the given degrees whose degree is at most max_degree.
Int count_words_exact(const std::vector<long>& degrees, const Int& max_degree);
/// Same with a log-degree bound B (compared through degree_cap_from_log).
Int count_words_exact(const std::vector<long>& degrees, double B);

struct DominantTerm {
  RootEnclosure alpha;
  Interval kappa;  // −1/(α g′(α))
};

DominantTerm dominant_term(const std::vector<long>& parts, std::optional<Rat> width = std::nullopt);

/// Everything derived from (n, m, u): the constants of the function-count
/// sandwich and the exponents and coefficients of the height-count sandwich.
///
/// kappa*/tau* follow the usual numbering: 1 and 2 are the residue and
/// geometric-sum constants of the dominant pole, 5 the normalized main-term
/// coefficient, 3 the total residue mass of the remaining poles (estimated
/// from floating roots, inflated by 1e-6), 6 = 3·max(1, |second root|) and 4
/// the constant from the pole at z = 1.
struct BoundReport {
  std::vector<long> degrees;
  ApproxResult approx;
  RootEnclosure alpha1;  // dominant root of g_n
  RootEnclosure beta1;   // dominant root of g_m
  double alpha2_modulus = 0;
  double beta2_modulus = 0;
  bool subdominant_available = false;
  bool simple_roots = true;  // r_3 = r_4 = 0
  long r3 = 0;
  long r4 = 0;
  Interval kappa1, kappa2, kappa3, kappa4, kappa5, kappa6;
  Interval tau1, tau2, tau3, tau4, tau5, tau6;
  Interval C1, C2, C3, C4;
  Interval b1, b2;
  /// Smallest log-degree B from which κ5 C1^B exceeds both 2κ6 B^{r3} C2^B and 2κ4.
  double validity_threshold = 0;
  Interval gap_bound;
  Interval crude_bound;
};

BoundReport build_bound_report(const std::vector<long>& degrees, const ApproxResult& approx);

/// Convenience: log-degree targets at width δ/8, then approximate_with_gcd.
BoundReport build_bound_report(const std::vector<long>& degrees, const Rat& delta);

struct CountBounds {
  Interval lower;
  Interval upper;
  bool above_threshold = false;
  bool lower_available = true;
  bool upper_available = true;
};

/// Bounds on #{words : log deg ≤ B}.
CountBounds function_count_bounds(const BoundReport& r, const Interval& B);

struct HeightCountBounds {
  Interval a1;
  Interval a2;
  Interval log_degree_lower;  // log(log B/(h(P)+b_S))
  Interval log_degree_upper;  // log(log B/(h(P)−b_S))
  CountBounds counts;
};

/// Bounds on #{words w : H(w·P) ≤ B}, given h(P) and log B as enclosures.
HeightCountBounds height_count_bounds(const BoundReport& r, const Interval& hP, const Interval& logB, const Rat& bS);

struct GapCrude {
  Interval gap_bound;
  Interval crude_bound;
};

/// (s/c_1)(1 − s^{−2δ/(c_1−δ)}) / s^{−(c_1+δ)/(c_1−δ)} and log(s)/(c_1 − 0.1).
GapCrude gap_and_crude_bounds(long s, const Interval& c1, const Rat& delta);

struct SingleMapCount {
  bool preperiodic = false;
  Int exact_count;        // n ≥ 0 with H(φⁿP) ≤ B (distinct points when preperiodic)
  Int window_lower;       // #{n : n ≤ log_d((log B − c)/ĥ)}
  Int window_upper;       // #{n : n ≤ log_d((log B + c)/ĥ)}
  Interval canonical_height;
  Rat c_phi;
};

SingleMapCount single_map_count_bounds(const EndoMap& phi, const ProjPoint& p, const Int& B,
                                       const Rat& tol = Rat(1, 1000000000), std::size_t digit_limit = 1000000);

struct MultiplicityBound {
  long r_P;
  Rat X;           // dmax^{r_P+1}(h(P)+b_S)/((2^{r_P+1}−1) b_S)
  Interval t_bound;
  Rat height_threshold;  // dmax^{r_P+1}(h(P)+b_S)
};

MultiplicityBound multiplicity_bound(long s, long dmax, const Rat& kappaP, const Rat& hP, const Rat& bS);

}  // namespace orbitcensus
