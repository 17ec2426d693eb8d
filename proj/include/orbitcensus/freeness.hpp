#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcensus/words.hpp"

namespace orbitcensus {

struct IndependenceResult {
  bool independent = true;
  std::vector<Int> witness;  // Π v_i^{w_i} = 1 when dependent
  std::vector<Int> basis;    // pairwise coprime basis of the absolute values
};

/// Multiplicative independence of nonzero rationals.
///
/// Works on a pairwise coprime basis of all numerators and denominators, so
/// no integer factorization is needed. ±1 entries are torsion and make the
/// set dependent on their own.
IndependenceResult mult_indep_check(const std::vector<Rat>& values);
IndependenceResult mult_indep_check(const std::vector<Int>& values);

/// T_1 = x, T_2 = x² − 2, T_{n+1} = x T_n − T_{n−1}; T_n(z + 1/z) = zⁿ + z⁻ⁿ.
UniPoly chebyshev_poly(unsigned n);

/// c·T_n(a x) for c = a⁻ⁿ, written through A = a²; it has rational coefficients.
UniPoly scaled_chebyshev(unsigned n, const Rat& a_squared);

enum class InnerKind { none, cyclic, chebyshev };

/// f = outer ∘ inner, with inner = (x − shift)ⁿ in the cyclic case and
/// inner = c·T_n(a(x − shift)) + offset, c = a⁻ⁿ, a² = a_squared, in the
/// Chebyshev case. When a is rational, f = F̃ ∘ T_n ∘ L for L(x) = a(x − shift).
struct DecompositionReport {
  bool found = false;
  unsigned n = 0;
  InnerKind kind = InnerKind::none;
  Rat shift;
  Rat a_squared = 1;
  Rat offset;
  UniPoly inner;
  UniPoly outer;

  UniPoly reconstruct() const { return outer.compose(inner); }
  /// L(x) = a(x − shift) when a² is the square of a rational.
  std::optional<UniPoly> rational_linear() const;
};

DecompositionReport detect_cyclic_inner(const UniPoly& f);
/// Tries inner degrees n = min_n, … dividing deg f and reports the first hit.
DecompositionReport detect_chebyshev_inner(const UniPoly& f, unsigned min_n = 2);

/// Normalized right factor h of degree n (monic, zero constant) with
/// f = F ∘ h, if one exists. Returns (h, F).
std::optional<std::pair<UniPoly, UniPoly>> right_factor(const UniPoly& f, unsigned n);

struct CriticalProfile {
  UniPoly D;                // disc_x(P − tQ): roots are the finite critical values
  long infinity_ramification = 0;  // Σ (e − 1) over critical points with value ∞
  bool squarefree = false;
};

struct CriticalReport {
  bool separate = true;
  bool simple = true;
  std::vector<CriticalProfile> profiles;
  std::vector<std::pair<std::size_t, std::size_t>> colliding_pairs;
};

CriticalProfile critical_profile(const EndoMap& phi);
CriticalReport critical_separation_check(const std::vector<EndoMap>& maps);

struct Relation {
  Word lhs;  // reduced by the relation
  Word rhs;  // shortlex-smaller word with the same composite
};

struct RelationSearch {
  std::vector<Relation> relations;
  long words_compared = 0;
  bool truncated = false;  // some words skipped by the degree cap
};

/// Shortlex order: shorter first, then lexicographic on letters.
bool shortlex_less(const Word& a, const Word& b);

/// Equal composites among words of length ≤ max_len and degree ≤ degree_cap.
///
/// Only the minimal relations are kept: scanning words in shortlex order, a
/// word w whose composite matches an earlier word r contributes w = r unless
/// w already contains the left side of a kept relation.
RelationSearch find_relations(const MapSet& s, std::size_t max_len = 5, const Int& degree_cap = Int(10000));

enum class Verdict { free, not_free, unknown };
enum class Criterion { polynomial_independence, rational_critical, relation_found, none };

std::string to_string(Verdict v);
std::string to_string(Criterion c);

struct FreenessCertificate {
  Verdict verdict = Verdict::unknown;
  Criterion criterion = Criterion::none;
  std::optional<IndependenceResult> degree_check;
  std::optional<IndependenceResult> coefficient_check;
  std::optional<CriticalReport> critical;
  std::vector<Relation> relations;
  std::vector<std::string> notes;
};

FreenessCertificate freeness_certificate(const MapSet& s, std::size_t max_len = 4);

}  // namespace orbitcensus
