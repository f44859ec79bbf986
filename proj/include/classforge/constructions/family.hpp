#ifndef CLASSFORGE_CONSTRUCTIONS_FAMILY_HPP
#define CLASSFORGE_CONSTRUCTIONS_FAMILY_HPP

#include "classforge/constructions/craig4.hpp"
#include "classforge/constructions/qn.hpp"
#include "classforge/constructions/superelliptic.hpp"
#include "classforge/constructions/thlev2.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace classforge::constructions {

enum class FamilyTag {
  nagell_yamamoto,
  yamamoto_rank2,
  craig3,
  craig4_checker,
  ternary,
  mestre,
  superelliptic,
  brumer_rosen,
  qn,
  thlev2
};

std::string to_string(FamilyTag t);
// Throws PreconditionError on an unknown name.
FamilyTag family_tag_from_string(const std::string &s);
std::vector<FamilyTag> all_family_tags();

/* Parameters shared by all families; each family reads the fields it needs.
 * N bounds |coordinates| of two- and three-variable families, [lo, hi] is the
 * range of one-parameter families. */
struct FamilyParams {
  unsigned long m = 3;
  int n = 2;
  int r1 = 0;
  long N = 50;
  long lo = 1, hi = 100;
  int sign = -1;                        // craig3: sign of F(s, t)
  std::vector<Int> q;                   // nagell_yamamoto: Yamamoto primes
  PolyRat f;                            // superelliptic
  std::vector<LinearFactor> factors;    // brumer_rosen
  std::vector<u64> primes;              // mestre
  std::optional<CraigTwoSolution> solution;   // craig4_checker
  std::size_t sample = 0;               // 0 keeps every point
  u64 seed = 0;
};

struct FamilySpec {
  FamilyTag tag = FamilyTag::nagell_yamamoto;
  FamilyParams params;
  std::string validity;
};

// Checks the family's preconditions and fills in the validity description.
FamilySpec family_spec(FamilyTag tag, FamilyParams params);

nlohmann::json to_json(const FamilySpec &s);
FamilySpec family_spec_from_json(const nlohmann::json &j);

/* A family with its per-family data built once (QN parameters, thLev2
 * series, the rescaled superelliptic polynomial). specialize is const and
 * safe to call from several threads. */
class Family {
public:
  // With build false only points() is usable.
  explicit Family(FamilySpec spec, bool build = true);

  const FamilySpec &spec() const { return spec_; }
  // Parameter points in a fixed order; a deterministic subsample of size
  // params.sample when that is nonzero.
  std::vector<std::vector<Int>> points() const;
  SpecializationResult specialize(const std::vector<Int> &point) const;

  const std::optional<QnFamily> &qn() const { return qn_; }
  const std::optional<ThLev2Family> &thlev2() const { return thlev2_; }
  const std::optional<SuperFamily> &superelliptic() const { return super_; }

private:
  FamilySpec spec_;
  bool built_ = false;
  std::optional<QnFamily> qn_;
  Int qn_y0_;
  std::optional<ThLev2Family> thlev2_;
  std::optional<SuperFamily> super_;
};

} // namespace classforge::constructions

#endif
