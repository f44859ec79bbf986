#ifndef CLASSFORGE_EXACTMATH_POLY_FP_HPP
#define CLASSFORGE_EXACTMATH_POLY_FP_HPP

#include "classforge/exactmath/poly_rat.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace classforge::exactmath {

using u64 = std::uint64_t;

// Scalar arithmetic modulo p < 2^62.
namespace fp {
inline u64 add(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }
inline u64 mul(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}
u64 pow(u64 a, u64 e, u64 p);
u64 inv(u64 a, u64 p);                 // a != 0 mod p
int legendre(u64 a, u64 p);            // p odd prime
// Square root mod odd prime p of a quadratic residue (Tonelli-Shanks).
u64 sqrt(u64 a, u64 p);
u64 from_rat(const Rat &q, u64 p);     // denominator must be invertible
u64 from_int(const Int &v, u64 p);
} // namespace fp

/* Dense polynomial over F_p, low degree first, coefficients in [0, p). */
class PolyFp {
public:
  PolyFp() = default;
  explicit PolyFp(u64 p) : p_(p) {}
  PolyFp(u64 p, std::vector<u64> coeffs);
  static PolyFp from_rat(const PolyRat &f, u64 p);
  static PolyFp constant(u64 p, u64 c);
  static PolyFp monomial(u64 p, u64 c, std::size_t deg);
  static PolyFp x(u64 p) { return monomial(p, 1, 1); }

  u64 modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  u64 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 lead() const;
  const std::vector<u64> &coeffs() const { return c_; }

  u64 eval(u64 x) const;
  PolyFp derivative() const;
  PolyFp monic() const;
  PolyFp scaled(u64 s) const;
  PolyFp compose(const PolyFp &inner) const;

  PolyFp &operator+=(const PolyFp &o);
  PolyFp &operator-=(const PolyFp &o);
  PolyFp &operator*=(const PolyFp &o);

  friend PolyFp operator+(PolyFp a, const PolyFp &b) { return a += b; }
  friend PolyFp operator-(PolyFp a, const PolyFp &b) { return a -= b; }
  friend PolyFp operator*(PolyFp a, const PolyFp &b) { return a *= b; }
  friend PolyFp operator-(const PolyFp &a);
  friend PolyFp operator/(const PolyFp &a, const PolyFp &b);
  friend PolyFp operator%(const PolyFp &a, const PolyFp &b);
  friend bool operator==(const PolyFp &a, const PolyFp &b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator<(const PolyFp &a, const PolyFp &b);

  std::string to_string(const char *var = "x") const;

private:
  void trim();
  u64 p_ = 0;
  std::vector<u64> c_;
};

std::pair<PolyFp, PolyFp> divmod(const PolyFp &a, const PolyFp &b);
PolyFp poly_gcd(const PolyFp &f, const PolyFp &g);
// Returns monic d = gcd(f, g) and s, t with s f + t g = d.
struct XgcdFp {
  PolyFp d, s, t;
};
XgcdFp poly_xgcd(const PolyFp &f, const PolyFp &g);
PolyFp powmod(const PolyFp &base, const Int &e, const PolyFp &modulus);
PolyFp powmod(const PolyFp &base, u64 e, const PolyFp &modulus);
// Inverse of a modulo m (gcd must be 1).
PolyFp invmod(const PolyFp &a, const PolyFp &m);

struct FpFactor {
  PolyFp factor;   // monic irreducible
  unsigned multiplicity;
  friend bool operator==(const FpFactor &, const FpFactor &) = default;
};

// Complete factorization over F_p: squarefree split, distinct-degree and
// equal-degree splitting (deterministic seed). Factors sorted by (degree,
// coefficients). Throws PreconditionError for composite p or f = 0.
std::vector<FpFactor> factor_fp(const PolyFp &f);

bool is_irreducible_fp(const PolyFp &f);
bool is_squarefree_fp(const PolyFp &f);
std::vector<u64> roots_fp(const PolyFp &f);   // distinct roots, ascending

} // namespace classforge::exactmath

#endif
