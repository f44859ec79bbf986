#ifndef CLASSFORGE_QUADCLASS_CERTIFICATE_HPP
#define CLASSFORGE_QUADCLASS_CERTIFICATE_HPP

#include "classforge/quadclass/quad_form.hpp"

#include <json.hpp>

#include <vector>

namespace classforge::quadclass {

struct TranscriptEntry {
  std::vector<unsigned> exponents;
  bool principal;
  friend bool operator==(const TranscriptEntry &, const TranscriptEntry &) = default;
};

/* The chosen classes generate (Z/m)^rank: every nontrivial exponent vector
 * gives a non-principal combination, as recorded in the transcript. */
struct RankCertificate {
  Int D;
  Int m;
  std::vector<QuadForm> forms;
  std::vector<TranscriptEntry> transcript;

  int rank() const { return static_cast<int>(forms.size()); }
};

// Largest subset of the classes whose m^r - 1 nontrivial combinations are
// all non-principal. Each class must have principal m-th power. For D > 0
// only odd m is accepted (narrow and wide rank agree there).
RankCertificate certify_m_rank(const std::vector<QuadForm> &classes, const Int &m,
                               const CycleBudget &budget = {});

// Recomputes every combination and the m-th power condition.
bool verify_certificate(const RankCertificate &cert, const CycleBudget &budget = {});

nlohmann::json to_json(const RankCertificate &cert);
RankCertificate certificate_from_json(const nlohmann::json &j);

} // namespace classforge::quadclass

#endif
