#ifndef CLASSFORGE_EXACTMATH_POLY_RAT_HPP
#define CLASSFORGE_EXACTMATH_POLY_RAT_HPP

#include "classforge/exactmath/number.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace classforge::exactmath {

/* Dense univariate polynomial over Q, coefficients stored low degree first.
 * The zero polynomial is the empty coefficient vector; otherwise the leading
 * coefficient is nonzero. */
class PolyRat {
public:
  PolyRat() = default;
  explicit PolyRat(std::vector<Rat> coeffs);
  PolyRat(std::initializer_list<Rat> coeffs);
  static PolyRat constant(const Rat &c);
  static PolyRat monomial(const Rat &c, std::size_t deg);
  static PolyRat x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat &lead() const;
  const std::vector<Rat> &coeffs() const { return c_; }

  Rat eval(const Rat &x) const;
  PolyRat derivative() const;
  PolyRat monic() const;
  PolyRat compose(const PolyRat &inner) const;   // this(inner(x))
  PolyRat pow(unsigned long e) const;
  PolyRat reversed(std::size_t deg) const;       // x^deg * this(1/x)
  // Positive rescaling to a primitive integer polynomial (sign preserved).
  PolyRat primitive_part() const;
  // Lowest common denominator of the coefficients.
  Int common_denominator() const;
  bool has_integer_coeffs() const;
  // Largest k with x^k | this (0 for nonzero constant term).
  int x_adic_order() const;

  PolyRat &operator+=(const PolyRat &o);
  PolyRat &operator-=(const PolyRat &o);
  PolyRat &operator*=(const PolyRat &o);
  PolyRat &operator*=(const Rat &s);

  friend PolyRat operator+(PolyRat a, const PolyRat &b) { return a += b; }
  friend PolyRat operator-(PolyRat a, const PolyRat &b) { return a -= b; }
  friend PolyRat operator*(PolyRat a, const PolyRat &b) { return a *= b; }
  friend PolyRat operator*(PolyRat a, const Rat &s) { return a *= s; }
  friend PolyRat operator*(const Rat &s, PolyRat a) { return a *= s; }
  friend PolyRat operator-(PolyRat a);
  friend PolyRat operator/(const PolyRat &a, const PolyRat &b);
  friend PolyRat operator%(const PolyRat &a, const PolyRat &b);
  friend bool operator==(const PolyRat &a, const PolyRat &b) { return a.c_ == b.c_; }

  std::string to_string(const char *var = "x") const;

private:
  void trim();
  std::vector<Rat> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<PolyRat, PolyRat> divmod(const PolyRat &a, const PolyRat &b);

// Monic gcd; gcd(0, 0) = 0.
PolyRat poly_gcd(const PolyRat &f, const PolyRat &g);

Rat resultant(const PolyRat &f, const PolyRat &g);
Rat discriminant(const PolyRat &f);

bool is_squarefree(const PolyRat &f);
// Yun's algorithm: monic factors s_1, s_2, ... with f = lc * prod s_i^i.
std::vector<PolyRat> squarefree_decomposition(const PolyRat &f);
// Product of the factors of odd multiplicity times lc: f = result * square.
PolyRat odd_part(const PolyRat &f);

// All rational roots (distinct, sorted ascending).
std::vector<Rat> rational_roots(const PolyRat &f);

} // namespace classforge::exactmath

#endif
