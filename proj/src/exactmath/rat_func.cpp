#include "classforge/exactmath/rat_func.hpp"

#include "classforge/error.hpp"

namespace classforge::exactmath {

RatFunc::RatFunc(PolyRat num, PolyRat den) {
  if (den.is_zero())
    throw PreconditionError("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = PolyRat::constant(1);
    return;
  }
  PolyRat g = poly_gcd(num, den);
  num = num / g;
  den = den / g;
  Rat lc = den.lead();
  num_ = num * (1 / lc);
  den_ = den * (1 / lc);
}

Rat RatFunc::eval(const Rat &t) const {
  Rat d = den_.eval(t);
  if (d == 0)
    throw PreconditionError("rational function has a pole at " + exactmath::to_string(t));
  return num_.eval(t) / d;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b) {
  if (a.den_ == b.den_)
    return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc &a, const RatFunc &b) {
  if (b.is_zero())
    throw PreconditionError("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string(const char *var) const {
  if (den_.degree() == 0)
    return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

} // namespace classforge::exactmath
