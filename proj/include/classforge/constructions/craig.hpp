#ifndef CLASSFORGE_CONSTRUCTIONS_CRAIG_HPP
#define CLASSFORGE_CONSTRUCTIONS_CRAIG_HPP

#include "classforge/constructions/specialization.hpp"
#include "classforge/exactmath/sparse_poly.hpp"
#include "classforge/jactor/curve.hpp"

#include <string>
#include <utility>
#include <vector>

namespace classforge::constructions {

using exactmath::BiPolyRat;

// The degree-24 binary form F(s, t) with its coefficients as printed.
BiPolyRat craig_F();

/* x, y, z, w in Z[s, t] solving 2(x^3 + y^3) = z^3 + w^3. */
struct CraigParametrization {
  BiPolyRat x, y, z, w;
};
CraigParametrization craig_parametrization();

struct IdentityCheck {
  std::string name;
  bool holds;
};

// F = f(x, y, z), the cubic relation, and the three splittings of f as
// exact polynomial identities.
std::vector<IdentityCheck> craig_identity_report();
bool craig_identity_check();

Int craig_F_value(const Int &s, const Int &t);
// gcd(3s, t) = 1, s even, s + 2^i t prime to 7 for i = 0, 1, 2.
bool craig_T(const Int &s, const Int &t);

// The three splittings (xy, x^3+y^3-z^3), (xz, x^3-y^3+z^3),
// (xw, x^3-y^3+w^3) at (s, t).
std::vector<Splitting> craig_splittings(const Int &s, const Int &t);

// Class 3-rank certificate for Q(sqrt(F(s, t))); target 3 when F < 0 and
// 2 when F > 0. Points outside T are flagged exceptional.
SpecializationResult craig_class_rank(const Int &s, const Int &t, const quadclass::CycleBudget &budget = {});

// Pairs of T with |s|, |t| < N and sign(F) == sign, by increasing |F|
// (ties by (s, t)).
std::vector<std::pair<Int, Int>> craig_pairs_by_size(long N, int sign);

/* Torsion certificate on v^2 = F(1, t) modulo p: an F_p root of F(1, t) is
 * moved to infinity and g_i = (v + A_i(1, t)) / 2 are read as 3 D_i. */
struct CraigTorsion {
  u64 p = 0;
  jactor::OddModelFp model;
  std::vector<jactor::MumfordDivisor> divisors;
  jactor::TorsionCertificate certificate;
};

// Throws PreconditionError when p is bad or F(1, t) has no root mod p,
// CertificateError when a multiplicity is not divisible by 3.
CraigTorsion craig_torsion_at(u64 p);
// The first `count` primes >= start where craig_torsion_at succeeds.
std::vector<CraigTorsion> craig_torsion_certificates(int count = 3, u64 start = 5);

} // namespace classforge::constructions

#endif
