#ifndef CLASSFORGE_EXACTMATH_NUMBER_HPP
#define CLASSFORGE_EXACTMATH_NUMBER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace classforge::exactmath {

// Arbitrary precision integers and rationals. mpq_class keeps values
// canonical (den > 0, gcd(num, den) = 1) after every arithmetic operation.
using Int = mpz_class;
using Rat = mpq_class;

Int parse_int(std::string_view s);
Rat parse_rat(std::string_view s);   // "p", "-p", "p/q"

inline std::string to_string(const Int &v) { return v.get_str(); }
std::string to_string(const Rat &v);

Int ipow(const Int &base, unsigned long e);
Rat rpow(const Rat &base, long e);

Int gcd(const Int &a, const Int &b);
Int lcm(const Int &a, const Int &b);
Int isqrt(const Int &n);                 // floor(sqrt(n)), n >= 0
bool is_square(const Int &n);
bool is_rat_square(const Rat &q);
// Exact m-th root when n is a perfect m-th power; sets ok accordingly.
Int iroot(const Int &n, unsigned long m, bool &ok);

// p-adic valuation of a nonzero integer or rational.
long valuation(const Int &n, const Int &p);
long valuation(const Rat &q, const Int &p);

// Floor and mathematical (non-negative) modulus.
Int floor_div(const Int &a, const Int &b);
Int mod(const Int &a, const Int &m);

inline int sign(const Int &v) { return sgn(v); }
inline int sign(const Rat &v) { return sgn(v); }

bool fits_i64(const Int &v);
std::int64_t to_i64(const Int &v);
std::uint64_t to_u64(const Int &v);
inline Int from_u64(std::uint64_t v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}
inline Int from_i64(std::int64_t v) {
  Int r = from_u64(v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1u
                         : static_cast<std::uint64_t>(v));
  return v < 0 ? Int(-r) : r;
}

} // namespace classforge::exactmath

#endif
