#ifndef CLASSFORGE_EXACTMATH_RAT_FUNC_HPP
#define CLASSFORGE_EXACTMATH_RAT_FUNC_HPP

#include "classforge/exactmath/poly_rat.hpp"

namespace classforge::exactmath {

/* Element num/den of Q(t), kept with gcd(num, den) = 1 and den monic. */
class RatFunc {
public:
  RatFunc() : den_(PolyRat::constant(1)) {}
  RatFunc(const Rat &c) : num_(PolyRat::constant(c)), den_(PolyRat::constant(1)) {}
  RatFunc(const PolyRat &p) : num_(p), den_(PolyRat::constant(1)) {}
  RatFunc(PolyRat num, PolyRat den);
  static RatFunc var() { return RatFunc(PolyRat::x()); }

  const PolyRat &num() const { return num_; }
  const PolyRat &den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  // Throws PreconditionError when t is a pole.
  Rat eval(const Rat &t) const;

  friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator-(const RatFunc &a) { return RatFunc(-a.num_, a.den_); }
  friend bool operator==(const RatFunc &a, const RatFunc &b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string(const char *var = "t") const;

private:
  PolyRat num_, den_;
};

} // namespace classforge::exactmath

#endif
