#include "orbitcensus/words.hpp"

#include <algorithm>
#include <cmath>

namespace orbitcensus {

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "id";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0) out += "∘";
    out += w[k] < names.size() ? names[w[k]] : "#" + std::to_string(w[k]);
  }
  return out;
}

WordStats length_and_degree(const Word& w, const std::vector<Rat>& weights, const std::vector<long>& degrees) {
  WordStats s;
  s.length = 0;
  s.degree = 1;
  s.counts.assign(degrees.size(), 0);
  for (std::size_t letter : w) {
    if (letter >= degrees.size()) throw InputError("word letter out of range");
    if (letter < weights.size()) s.length += weights[letter];
    s.degree *= degrees[letter];
    ++s.counts[letter];
  }
  return s;
}

Interval log_degree(const Word& w, const std::vector<long>& degrees) {
  Interval acc(0L);
  for (std::size_t letter : w) acc += log_int(Int(degrees.at(letter)));
  return acc;
}

long a_degree(const Word& w, const std::vector<long>& degrees, std::size_t i) {
  long acc = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    long d = degrees.at(*it);
    acc = (*it == i ? 1 : 0) + d * acc;
  }
  return acc;
}

long a_degree(const Word& w, const MapSet& s, std::size_t i) {
  for (const auto& f : s.nf_maps) {
    bool monomial = f.is_polynomial() && f.num.size() > 0;
    for (std::size_t k = 0; monomial && k + 1 < f.num.size(); ++k)
      if (!is_zero(f.num.coeffs()[k])) monomial = false;
    if (!monomial) throw InputError("a-degrees are defined for sets of monomials a x^d");
  }
  return a_degree(w, s.degrees(), i);
}

EndoMap compose(const Word& w, const MapSet& s) {
  std::vector<RatFn<Rat>> fns;
  for (const auto& m : s.maps) fns.push_back(m.fn());
  if (fns.size() != s.size()) throw InputError("symbolic composition into EndoMap needs a set over Q");
  return EndoMap::from_fn(compose_word(w, fns));
}

namespace {

void collect_words(const std::vector<long>& degrees, const Int& cap, Word& cur, const Int& deg,
                   std::vector<std::pair<Int, Word>>& out) {
  out.emplace_back(deg, cur);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    Int nd = deg * degrees[i];
    if (nd > cap) continue;
    cur.push_back(i);
    collect_words(degrees, cap, cur, nd, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_words_by_degree(const std::vector<long>& degrees, const Int& max_degree) {
  for (long d : degrees)
    if (d < 2) throw InputError("word enumeration by degree needs every degree >= 2");
  std::vector<std::pair<Int, Word>> acc;
  if (max_degree < 1) return {};
  Word cur;
  collect_words(degrees, max_degree, cur, Int(1), acc);
  std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    if (a.second.size() != b.second.size()) return a.second.size() < b.second.size();
    return a.second < b.second;
  });
  std::vector<Word> out;
  out.reserve(acc.size());
  for (auto& [d, w] : acc) out.push_back(std::move(w));
  return out;
}

Int degree_cap_from_log(double max_log_degree) {
  if (max_log_degree < 0) return Int(0);
  Interval e = exp(Interval::from_double(max_log_degree)) * Interval::from_double(1.0 + 1e-12);
  return floor_rat(e.upper_rat());
}

std::vector<Word> enumerate_words_by_degree(const std::vector<long>& degrees, double max_log_degree) {
  return enumerate_words_by_degree(degrees, degree_cap_from_log(max_log_degree));
}

namespace {

struct CensusWalk {
  const std::vector<EndoMap>& maps;
  const Int& B;
  const Int& cap;
  std::size_t digit_limit;
  OrbitCensus& out;

  void visit(const ProjPoint& q, const Int& deg) {
    ++out.words_visited;
    if (height_H(q) <= B) {
      ++out.function_count;
      ++out.multiplicity[q];
    }
    for (const auto& phi : maps) {
      Int nd = deg * phi.degree();
      if (nd > cap) continue;
      ProjPoint next = phi(q);
      check_digit_guard(next, digit_limit);
      visit(next, nd);
    }
  }
};

}  // namespace

OrbitCensus orbit_census_enumerate(const std::vector<EndoMap>& maps, const ProjPoint& p, const Int& B,
                                   const SetConstants& consts, std::size_t digit_limit) {
  WeilHeight hp = weil_height(p);
  Interval gap = hp.h - Interval(consts.bS);
  if (!gap.certainly_positive())
    throw PreconditionError("orbit census needs h(P) > b_S = " + Interval(consts.bS).to_string(8) +
                            " (got h(P) = " + hp.h.to_string(8) + ")");
  if (B <= hp.H) throw PreconditionError("orbit census needs B > H(P)");
  OrbitCensus out;
  out.function_count = 0;
  out.words_visited = 0;
  out.degree_cap = floor_rat((log_int(B) / gap).upper_rat());
  CensusWalk walk{maps, B, out.degree_cap, digit_limit, out};
  walk.visit(p, Int(1));
  out.point_count = static_cast<long>(out.multiplicity.size());
  return out;
}

}  // namespace orbitcensus
