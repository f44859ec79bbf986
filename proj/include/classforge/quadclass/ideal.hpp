#ifndef CLASSFORGE_QUADCLASS_IDEAL_HPP
#define CLASSFORGE_QUADCLASS_IDEAL_HPP

#include "classforge/quadclass/fund_disc.hpp"
#include "classforge/quadclass/quad_form.hpp"

#include <vector>

namespace classforge::quadclass {

/* Element (X + Y sqrt(D)) / 2 of the maximal order; X = Y D mod 2. */
struct QuadElement {
  Int X, Y;
  Int norm(const Int &D) const { return (X * X - D * Y * Y) / 4; }
};

/* Primitive ideal aZ + ((b + sqrt(D))/2)Z, 4a | b^2 - D, a > 0. */
struct QuadIdeal {
  Int a, b;
  friend bool operator==(const QuadIdeal &, const QuadIdeal &) = default;
};

/* Ideal generated by a list of elements: content times a primitive ideal. */
struct IdealHNF {
  Int content;
  QuadIdeal primitive;
  Int norm() const { return content * content * primitive.a; }
};

IdealHNF ideal_from_generators(const Int &D, const std::vector<QuadElement> &gens);

QuadForm form_from_ideal(const QuadIdeal &I, const Int &D);

// Class of the ideal a = (N, (A + k sqrt(D))/2) where A^2 - 4 N^m = D k^2.
// Requires gcd(N, A) = 1 (CertificateError otherwise); the result is
// reduced and satisfies power(result, m) principal (checked). For D > 0, odd
// m and a negative norm N^m the class returned is a^{m+1}, which has the wide
// class of a and narrow order dividing m.
QuadForm ideal_class_from_mth_power(const Int &N, const Int &A, const FundDisc &D, unsigned long m);

} // namespace classforge::quadclass

#endif
