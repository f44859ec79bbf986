#ifndef CLASSFORGE_CONSTRUCTIONS_SPECIALIZATION_HPP
#define CLASSFORGE_CONSTRUCTIONS_SPECIALIZATION_HPP

#include "classforge/jactor/torsion.hpp"
#include "classforge/quadclass/certificate.hpp"
#include "classforge/quadclass/fund_disc.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace classforge::constructions {

using exactmath::Int;
using exactmath::PolyRat;
using exactmath::Rat;
using exactmath::u64;

enum class Outcome { certified, exceptional, incomplete };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string &s);

/* Outcome of one parameter point of a family. Exceptional means a
 * certificate precondition failed or the certified rank fell short of the
 * target; incomplete means a budget ran out. */
struct SpecializationResult {
  std::vector<Int> point;
  std::optional<quadclass::FundDisc> field;
  std::optional<jactor::HyperCurve> curve;
  std::vector<quadclass::RankCertificate> class_certificates;
  std::vector<jactor::TorsionCertificate> torsion_certificates;
  int target_rank = 0;
  int certified_rank = 0;
  Outcome outcome = Outcome::incomplete;
  std::string note;

  bool exceptional() const { return outcome == Outcome::exceptional; }
  bool certified() const { return outcome == Outcome::certified; }
};

nlohmann::json to_json(const SpecializationResult &r);
SpecializationResult specialization_from_json(const nlohmann::json &j);

// Re-checks every attached certificate from scratch.
bool verify_result(const SpecializationResult &r);

/* alpha = (A + sqrt(A^2 - 4 N^m)) / 2 has norm N^m; when gcd(N, A) = 1 the
 * ideal (alpha) is an m-th power. */
struct Splitting {
  Int N, A;
};

// Field Q(sqrt(A^2 - 4 N^m)) (common to all splittings), the ideal classes
// of the splittings and the largest certified independent subset. The
// point is certified when that rank reaches target_rank.
SpecializationResult certify_splittings(std::vector<Int> point, const std::vector<Splitting> &splittings,
                                        unsigned long m, int target_rank,
                                        const quadclass::CycleBudget &budget = {});

// Q(sqrt(-1)) and Q(sqrt(-3)) have extra units and are always flagged.
bool excluded_small_field(const quadclass::FundDisc &D);

} // namespace classforge::constructions

#endif
