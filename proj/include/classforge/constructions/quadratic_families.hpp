#ifndef CLASSFORGE_CONSTRUCTIONS_QUADRATIC_FAMILIES_HPP
#define CLASSFORGE_CONSTRUCTIONS_QUADRATIC_FAMILIES_HPP

#include "classforge/constructions/craig.hpp"
#include "classforge/constructions/specialization.hpp"
#include "classforge/exactmath/sparse_poly.hpp"

#include <array>
#include <vector>

namespace classforge::constructions {

// Points (x, y) with |x|, |y| < N, y^2 - 4x^m < 0 and gcd(x, y) = 1.
std::vector<std::array<Int, 2>> nagell_points(unsigned long m, long N);

// Order-m class of (x, (y + sqrt(y^2 - 4x^m))/2) in Q(sqrt(y^2 - 4x^m)),
// certified as a rank-1 certificate (m - 1 nonprincipal powers).
SpecializationResult nagell_point(const Int &x, const Int &y, unsigned long m);
std::vector<SpecializationResult> nagell_family(unsigned long m, long N);

// For the primes p_i of m and primes q_i (q_i = 1 mod p_i, or 1 mod 4 when
// p_i = 2; PreconditionError otherwise): gcd(x, y) = 1, y^2 < 4x^m,
// q_i | x, y a p_i-th power nonresidue mod q_i and the field is neither
// Q(sqrt(-1)) nor Q(sqrt(-3)).
bool yamamoto_conditions(const Int &x, const Int &y, unsigned long m, const std::vector<Int> &q);
// Points of nagell_points(m, N) satisfying yamamoto_conditions.
std::vector<std::array<Int, 2>> yamamoto_points(unsigned long m, const std::vector<Int> &q, long N);

// x^{2m} + y^{2m} + z^{2m} - 2x^m y^m - 2x^m z^m - 2y^m z^m.
exactmath::SparsePoly<3> ternary_form(unsigned long m);
Int ternary_value(const Int &x, const Int &y, const Int &z, unsigned long m);
// The form equals (x^m+y^m-z^m)^2 - 4x^m y^m and (x^m-y^m+z^m)^2 - 4x^m z^m.
std::vector<IdentityCheck> ternary_identity_report(unsigned long m);
bool ternary_identity_check(unsigned long m);
// (x^m - y^m, z) = (x^m - z^m, y) = (y^m - z^m, x) = 1.
bool ternary_coprime(const Int &x, const Int &y, const Int &z, unsigned long m);
// Target rank 2 when the form is negative, 1 when positive.
SpecializationResult ternary_point(const Int &x, const Int &y, const Int &z, unsigned long m);
// Triples with |x|, |y|, |z| < N passing ternary_coprime.
std::vector<std::array<Int, 3>> ternary_points(unsigned long m, long N);
std::vector<SpecializationResult> ternary_family(unsigned long m, long N);

} // namespace classforge::constructions

#endif
