#pragma once

#include <map>
#include <vector>

#include "orbitcensus/maps.hpp"

namespace orbitcensus {

/// Letters θ_1 … θ_n as generator indices. The word acts by θ_1(θ_2(…θ_n(P))).
using Word = std::vector<std::size_t>;

std::string word_to_string(const Word& w, const std::vector<std::string>& names);

struct WordStats {
  Rat length;                // Σ v over letters
  Int degree;                // Π d over letters
  std::vector<long> counts;  // letter multiplicities
};

WordStats length_and_degree(const Word& w, const std::vector<Rat>& weights, const std::vector<long>& degrees);

/// Enclosure of Σ log d over the letters, equal to log deg(w).
Interval log_degree(const Word& w, const std::vector<long>& degrees);

/// Exponent of a_i in the leading coefficient of the composed monomial word,
/// for generators a_j x^{d_j}: deg(θ∘g) = [θ = i] + d_θ·deg(g).
long a_degree(const Word& w, const std::vector<long>& degrees, std::size_t i);

/// Same, checking that every map of S is a monomial a x^d.
long a_degree(const Word& w, const MapSet& s, std::size_t i);

template <class R>
RatFn<R> compose_word(const Word& w, const std::vector<RatFn<R>>& maps) {
  RatFn<R> acc = RatFn<R>::identity();
  bool first = true;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const auto& m = maps.at(*it);
    acc = first ? m : m.compose(acc);
    first = false;
  }
  return acc;
}

EndoMap compose(const Word& w, const MapSet& s);

/// Words with Π d ≤ max_degree, ordered by degree, then length, then letters.
std::vector<Word> enumerate_words_by_degree(const std::vector<long>& degrees, const Int& max_degree);
/// Log-degree cutoff; exp(max_log_degree) is compared with a 1e-12 relative slack.
std::vector<Word> enumerate_words_by_degree(const std::vector<long>& degrees, double max_log_degree);

/// floor(exp(x)·(1 + 1e-12)), the integer degree cap for a log-degree bound.
Int degree_cap_from_log(double max_log_degree);

struct OrbitCensus {
  Int function_count;                    // words w with H(w·P) ≤ B
  Int point_count;                       // distinct points among them
  std::map<ProjPoint, Int> multiplicity; // point → number of words
  Int degree_cap;                        // deg w ≤ cap for every counted word
  Int words_visited;
};

/// Exhaustive orbit census up to height B.
///
/// Requires h(P) > b_S; words of degree above log B/(h(P) − b_S) are never
/// visited, since h(f(P)) ≥ deg f·(h(P) − b_S) for them.
OrbitCensus orbit_census_enumerate(const std::vector<EndoMap>& maps, const ProjPoint& p, const Int& B,
                                   const SetConstants& consts, std::size_t digit_limit = 1000000);

}  // namespace orbitcensus
