#ifndef CLASSFORGE_CONSTRUCTIONS_CRAIG4_HPP
#define CLASSFORGE_CONSTRUCTIONS_CRAIG4_HPP

#include "classforge/constructions/craig.hpp"

#include <json.hpp>

#include <vector>

namespace classforge::constructions {

/* Candidate parametric solution in Q[t] of
 *   x1 z1 = x0 z0, x2 y2 = x0 y0,
 *   x1^3 - y1^3 + z1^3 = -(x0^3 - y0^3 + z0^3),
 *   x2^3 + y2^3 - z2^3 = -(x0^3 + y0^3 - z0^3). */
struct CraigTwoSolution {
  PolyRat x0, y0, z0, x1, y1, z1, x2, y2, z2;
};

// {"x0": [c0, c1, ...], ...}, coefficients low degree first as integers or
// "p/q" strings. Throws PreconditionError on a missing or malformed entry.
CraigTwoSolution craig4_from_json(const nlohmann::json &j);
nlohmann::json to_json(const CraigTwoSolution &s);

// One entry per equation, in the order listed above.
std::vector<IdentityCheck> craig4_report(const CraigTwoSolution &s);
bool craig4_check(const CraigTwoSolution &s);

// f(x, y, z) = (x^3 + y^3 - z^3)^2 - 4 x^3 y^3.
PolyRat craig4_h(const CraigTwoSolution &s);

/* On Y^2 = h(t) the functions Y + A_k with A_k = x0^3+y0^3-z0^3,
 * x0^3-y0^3+z0^3, x1^3+y1^3-z1^3, -x2^3+y2^3+z2^3 are 3 D_k. */
struct Craig4Torsion {
  u64 p = 0;
  jactor::HyperCurve curve;
  std::vector<jactor::MumfordDivisor> divisors;
  jactor::TorsionCertificate certificate;
};

// Requires deg h odd and h = f(x0, y0, z0) (MismatchError otherwise);
// PreconditionError at a bad prime, CertificateError when a zero
// multiplicity is not divisible by 3.
Craig4Torsion craig4_torsion_at(const CraigTwoSolution &s, const PolyRat &h, u64 p = 7);

} // namespace classforge::constructions

#endif
