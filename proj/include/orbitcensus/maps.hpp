#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitcensus/exactnum/interval.hpp"
#include "orbitcensus/exactnum/nfelem.hpp"
#include "orbitcensus/exactnum/poly.hpp"

namespace orbitcensus {

/// Point [x:y] of the projective line over Q in canonical form: gcd(x,y) = 1,
/// y >= 0, and [1:0] for the point at infinity.
struct ProjPoint {
  Int x = 0;
  Int y = 1;

  static ProjPoint make(Int x, Int y);
  static ProjPoint from_rat(const Rat& q) { return make(q.get_num(), q.get_den()); }
  static ProjPoint infinity() { return ProjPoint{1, 0}; }

  bool is_infinity() const { return y == 0; }
  Rat affine() const;
  std::string to_string() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  }
};

/// Accepts `p/q`, an integer, a decimal, `[x:y]` or `inf`.
ProjPoint parse_point(std::string_view text);

struct WeilHeight {
  Int H;
  Interval h;
};

/// H = max(|x|, |y|) and h = log H.
WeilHeight weil_height(const ProjPoint& p);
Int height_H(const ProjPoint& p);

/// Rational function num/den over a field R with den monic. Composition and
/// equality are exact; for a morphism num and den are coprime.
template <class R>
struct RatFn {
  Poly<R> num;
  Poly<R> den{R(1)};

  static RatFn make(const Poly<R>& n, const Poly<R>& d) {
    if (d.is_zero()) throw InputError("rational map with zero denominator");
    R inv = R(1) / d.lead();
    return RatFn{n * inv, d * inv};
  }
  static RatFn identity() { return RatFn{Poly<R>::x(), Poly<R>(R(1))}; }

  long degree() const { return std::max(num.degree(), den.degree()); }
  bool is_polynomial() const { return den.degree() == 0; }

  /// this ∘ inner, via the homogeneous forms of this evaluated at (num, den) of inner.
  RatFn compose(const RatFn& inner) const {
    if (is_polynomial() && inner.is_polynomial()) return RatFn{num.compose(inner.num), den};
    const long D = degree();
    std::vector<Poly<R>> np{Poly<R>(R(1))};
    std::vector<Poly<R>> dp{Poly<R>(R(1))};
    for (long k = 1; k <= D; ++k) {
      np.push_back(np.back() * inner.num);
      dp.push_back(dp.back() * inner.den);
    }
    auto homog = [&](const Poly<R>& p) {
      Poly<R> acc;
      for (long k = 0; k <= p.degree(); ++k) {
        const R& c = p.coeffs()[static_cast<std::size_t>(k)];
        if (is_zero(c)) continue;
        acc += np[static_cast<std::size_t>(k)] * dp[static_cast<std::size_t>(D - k)] * c;
      }
      return acc;
    };
    return make(homog(num), homog(den));
  }

  friend bool operator==(const RatFn& a, const RatFn& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }
};

enum class MapKind { polynomial, rational };

/// Endomorphism of P^1 over Q, with its integer homogenization (F, G):
/// F = Σ F[k] x^k y^{d-k}, G likewise, jointly primitive.
class EndoMap {
 public:
  static EndoMap polynomial(const UniPoly& f, std::string name = "");
  static EndoMap rational(const UniPoly& num, const UniPoly& den, std::string name = "");
  static EndoMap from_fn(const RatFn<Rat>& fn, std::string name = "");

  MapKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const RatFn<Rat>& fn() const { return fn_; }
  const UniPoly& num() const { return fn_.num; }
  const UniPoly& den() const { return fn_.den; }
  long degree() const { return fn_.degree(); }
  const std::vector<Int>& F() const { return F_; }
  const std::vector<Int>& G() const { return G_; }

  /// Leading coefficient of a polynomial map.
  Rat leading_coefficient() const;

  ProjPoint operator()(const ProjPoint& p) const;
  std::string to_string() const;

 private:
  EndoMap() = default;
  void homogenize();

  MapKind kind_ = MapKind::polynomial;
  std::string name_;
  RatFn<Rat> fn_;
  std::vector<Int> F_;
  std::vector<Int> G_;
};

ProjPoint evaluate(const EndoMap& phi, const ProjPoint& p);

/// Pieces of the height-distortion bound of a map.
struct HeightBoundDetail {
  Int norm_plus;   // max(|F|_1, |G|_1)
  Rat norm_minus;  // max_i(|A_i|_1 + |B_i|_1)
  Int denom;       // lcm of denominators of the A_i, B_i
  Rat c_plus;      // upper bound for log norm_plus
  Rat c_minus;     // upper bound for log(norm_minus · denom), floored at 0
  Rat C;           // max(c_plus, c_minus)
};

/// Certified C with |h(φ(P)) − d·h(P)| ≤ C for every P in P^1(Q).
///
/// The upper side uses |F(x,y)| ≤ |F|_1 H^d. The lower side solves the
/// Sylvester systems A_1 F + B_1 G = x^{2d-1}, A_2 F + B_2 G = y^{2d-1}
/// exactly; any common factor of F(x,y), G(x,y) divides the common
/// denominator D, and H^{2d-1} ≤ K H^{d-1} max(|F|,|G|), giving
/// h(φ(P)) ≥ d·h(P) − log(K·D).
HeightBoundDetail height_bound_detail(const EndoMap& phi);
Rat height_bound(const EndoMap& phi);

struct SetConstants {
  long dS = 2;
  Rat CS;
  Rat bS;
  /// B_S = exp(b_S).
  Interval BS() const;
  std::vector<Rat> per_map;
};

SetConstants set_constants(const std::vector<EndoMap>& maps);

struct CanonicalHeight {
  Interval value;     // encloses ĥ_φ(P)
  bool preperiodic;   // repeated point observed
  long iterations;
};

/// ĥ_φ(P) to within `tol`, as h(φⁿP)/dⁿ ± (C/(d−1))/dⁿ.
CanonicalHeight canonical_height(const EndoMap& phi, const ProjPoint& p, const Rat& tol,
                                 std::size_t digit_limit = 1000000);

/// Guard on coordinate sizes; throws ResourceGuardError past `digit_limit` digits.
void check_digit_guard(const ProjPoint& p, std::size_t digit_limit);

/// Finite map set, over Q or over an explicit quotient ring Q[t]/(m).
struct MapSet {
  std::vector<std::string> names;
  std::vector<EndoMap> maps;          // filled for sets over Q
  NFElem::Modulus modulus;            // null for sets over Q
  std::vector<RatFn<NFElem>> nf_maps; // filled for every set

  bool over_number_field() const { return modulus != nullptr; }
  std::size_t size() const { return names.size(); }
  std::vector<long> degrees() const;

  static MapSet over_q(std::vector<EndoMap> maps);
  static MapSet over_field(NFElem::Modulus mod, std::vector<RatFn<NFElem>> maps, std::vector<std::string> names);
};

RatFn<NFElem> to_nf(const RatFn<Rat>& f);

}  // namespace orbitcensus
