#ifndef CLASSFORGE_JACTOR_MUMFORD_HPP
#define CLASSFORGE_JACTOR_MUMFORD_HPP

#include "classforge/jactor/curve.hpp"

#include <string>
#include <vector>

namespace classforge::jactor {

/* Divisor class sum(x_i, v(x_i)) - deg(u) * inf on an odd model over F_p.
 * Reduced means u monic, deg v < deg u <= g and u | v^2 - f. */
struct MumfordDivisor {
  PolyFp u, v;

  friend bool operator==(const MumfordDivisor &a, const MumfordDivisor &b) { return a.u == b.u && a.v == b.v; }
  friend bool operator<(const MumfordDivisor &a, const MumfordDivisor &b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  }
  bool is_identity() const { return u.is_one(); }
  std::string to_string() const;
};

MumfordDivisor identity_divisor(const HyperCurve &C);
// Semi-reduced validity (u monic, u | v^2 - f, deg v < deg u); reduced
// additionally requires deg u <= g.
bool is_semi_reduced(const MumfordDivisor &D, const HyperCurve &C);
bool is_reduced(const MumfordDivisor &D, const HyperCurve &C);

// The class of P - inf for an affine point P = (x, y) on C.
MumfordDivisor point_divisor(const HyperCurve &C, u64 x, u64 y);

MumfordDivisor negate(const MumfordDivisor &D, const HyperCurve &C);
// Reduction of a semi-reduced divisor to the unique reduced representative.
MumfordDivisor reduce_divisor(MumfordDivisor D, const HyperCurve &C);
MumfordDivisor cantor_add(const MumfordDivisor &D1, const MumfordDivisor &D2, const HyperCurve &C);
MumfordDivisor scalar_mul(const Int &n, const MumfordDivisor &D, const HyperCurve &C);

// Every reduced divisor on C (brute force; small p^g only).
std::vector<MumfordDivisor> all_reduced_divisors(const HyperCurve &C, u64 max_count = 2000000);

} // namespace classforge::jactor

#endif
