#ifndef CLASSFORGE_CONSTRUCTIONS_RI_HPP
#define CLASSFORGE_CONSTRUCTIONS_RI_HPP

#include "classforge/constructions/specialization.hpp"
#include "classforge/jactor/curve.hpp"

#include <array>
#include <vector>

namespace classforge::constructions {

/* (Y - a)(Y - b) = X^m (Y - c) with a, b, c distinct. Completing the square
 * in Y gives W^2 = X^{2m} + d X^m + e^2 with W = 2Y - (a + b + X^m),
 * d = 2(a + b) - 4c, e = a - b. On the slice d = -1 - e^2, X = 1 is a
 * rational Weierstrass point and is moved to infinity. */
struct RiCurve {
  unsigned long m = 0;
  Rat a, b, c, d, e;
  PolyRat even_model;
  jactor::OddModelQ odd;
  // P1 = (0, e); P0 and P2 are the points at infinity with W / X^m -> +1
  // and -1.
  jactor::ModelPoint<Rat> P0, P1, P2;
  int genus() const { return static_cast<int>(m) - 1; }
};

// c placing (a, b, c) on the slice d = -1 - e^2.
Rat ri_slice_c(const Rat &a, const Rat &b);
// Throws PreconditionError when a, b, c are not distinct (equivalently
// e = 0 or d^2 = 4e^2) or when (a, b, c) is off the slice.
RiCurve ri_curve(unsigned long m, const Rat &a, const Rat &b, const Rat &c);

struct RiTorsion {
  u64 p = 0;
  jactor::HyperCurve curve;
  std::vector<jactor::MumfordDivisor> divisors;   // [P1 - P0], [P2 - P0]
  jactor::TorsionCertificate certificate;
};
// PreconditionError at bad primes and primes dividing m.
RiTorsion ri_torsion_at(const RiCurve &C, u64 p);
std::vector<RiTorsion> ri_torsion_certificates(const RiCurve &C, int count = 3, u64 start = 3);

/* Class family on the member a = 0, c = 1, b = 1 - 2^m: the functions Y - a
 * and Y - b give the splittings (XZ, X^m - (2^m - 1) Z^m) and
 * (2XZ, X^m + (2^m - 1) Z^m) of X^{2m} + d X^m Z^m + e^2 Z^{2m}. */
Int ri_class_radicand(unsigned long m, const Int &X, const Int &Z);
SpecializationResult ri_class_point(unsigned long m, const Int &X, const Int &Z);
// Coprime (X, Z) with 0 < Z < N, |X| < N, X + Z odd and negative radicand.
std::vector<std::array<Int, 2>> ri_class_points(unsigned long m, long N);

} // namespace classforge::constructions

#endif
