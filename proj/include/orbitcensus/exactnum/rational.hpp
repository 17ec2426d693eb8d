#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbitcensus {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by every module. The CLI maps these onto exit codes.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_zero(const Int& z) { return sgn(z) == 0; }

/// Parses `p/q`, `p` or a plain decimal such as `-1.25` into a canonical rational.
Rat parse_rat(std::string_view text);

/// Parses an integer that may be written as `1e20`, `10^9` or plain digits.
Int parse_int_expr(std::string_view text);

std::string to_string(const Rat& q);
std::string to_string(const Int& z);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

Int gcd_all(const std::vector<Int>& values);
Int lcm_int(const Int& a, const Int& b);

/// Number of decimal digits of |z| (1 for zero).
std::size_t decimal_digits(const Int& z);

/// Smallest k with 2^k >= q, for q > 0.
long ceil_log2(const Rat& q);

}  // namespace orbitcensus
