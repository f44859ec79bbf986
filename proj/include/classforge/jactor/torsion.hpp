#ifndef CLASSFORGE_JACTOR_TORSION_HPP
#define CLASSFORGE_JACTOR_TORSION_HPP

#include "classforge/jactor/mumford.hpp"

#include <json.hpp>

#include <vector>

namespace classforge::jactor {

// The class D with div(a(x) + b(x) y) = m D + (multiple of inf), read off
// from the factorization of the norm a^2 - b^2 f. Throws CertificateError
// when some zero multiplicity is not divisible by m. Postcondition
// m D = 0 is checked.
MumfordDivisor divisor_of_function(const HyperCurve &C, const PolyFp &a, const PolyFp &b, unsigned long m);

struct TorsionTranscriptEntry {
  std::vector<unsigned> exponents;
  bool identity;
};

struct TorsionCertificate {
  HyperCurve curve;
  unsigned long m = 0;
  std::vector<MumfordDivisor> divisors;   // the certified independent classes
  std::vector<TorsionTranscriptEntry> transcript;
  int rank() const { return static_cast<int>(divisors.size()); }
};

// Largest subset of the classes whose nontrivial combinations with
// exponents in [0, m) are all nonzero. Each class must satisfy m D = 0.
TorsionCertificate certify_torsion_rank(const std::vector<MumfordDivisor> &divs, unsigned long m,
                                        const HyperCurve &C);
bool verify_certificate(const TorsionCertificate &cert);

nlohmann::json to_json(const TorsionCertificate &cert);
TorsionCertificate torsion_certificate_from_json(const nlohmann::json &j);

} // namespace classforge::jactor

#endif
