#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "orbitcensus/census.hpp"
#include "orbitcensus/curves.hpp"
#include "orbitcensus/freeness.hpp"

namespace orbitcensus::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  mpfr_prec_t precision = 256;
  Rat delta{1, 100};
  std::size_t max_len = 4;
  unsigned threads = 1;
  std::size_t digit_limit = 1000000;
  bool json = false;

  void validate() const;
};

/// ORBITCENSUS_PRECISION if set, else `fallback`.
mpfr_prec_t precision_from_env(mpfr_prec_t fallback);

/// Map-set file: {"modulus": [...]?, "maps": [{"name", "type", "coeffs" | "num","den"}]}.
/// Coefficients are `p/q` strings; with a modulus present a coefficient may
/// also be an array of `p/q` strings, read as a polynomial in t.
MapSet parse_map_set(const Json& j);
MapSet load_map_set(const std::string& path);

/// Polynomial file: {"coeffs": ["c0", "c1", ...]}.
UniPoly parse_poly_file(const Json& j);
Json load_json(const std::string& path);

Json to_json(const Interval& x);
Json to_json(const Rat& q);
Json to_json(const RootEnclosure& r);
Json to_json(const NFBiPoly& f);
Json to_json(const RatBiPoly& f);

Json approx_json(const ApproxResult& a);
Json bound_report_json(const BoundReport& r);
Json set_constants_json(const SetConstants& c);
Json certificate_json(const FreenessCertificate& c, const MapSet& s);
Json factor_report_json(const FactorReport& r);

/// Runs one command line; returns the exit code (0 ok, 1 input, 2
/// precondition, 3 resource guard, 4 failed internal check).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orbitcensus::cli
