#ifndef CLASSFORGE_HARNESS_REPORT_HPP
#define CLASSFORGE_HARNESS_REPORT_HPP

#include "classforge/constructions/family.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace classforge::harness {

using constructions::SpecializationResult;
using exactmath::Int;

struct DistinctCount {
  std::size_t N = 0;    // specializations considered
  std::size_t g = 0;    // distinct fundamental discriminants among them
  double n_over_log_n = 0;
};
// Over the first N results (all when N exceeds the count); results without
// a field are skipped.
DistinctCount distinct_field_count(const std::vector<SpecializationResult> &results, std::size_t N);

struct ExceptionalCheckpoint {
  std::size_t N = 0;
  std::size_t exceptional = 0;   // among the first N results
  double sqrt_N = 0;
};
// Checkpoints 10, 20, 50, 100, 200, 500, ... below the count, then the count.
std::vector<std::size_t> default_checkpoints(std::size_t total);
std::vector<ExceptionalCheckpoint> exceptional_set_measure(const std::vector<SpecializationResult> &results,
                                                           const std::vector<std::size_t> &checkpoints);

/* Everything but `timing` and `cache_hits` is a function of the family and
 * its points alone. */
struct VerificationReport {
  nlohmann::json family;
  std::vector<SpecializationResult> results;
  std::size_t total = 0, certified = 0, exceptional = 0, incomplete = 0;
  DistinctCount distinct;
  std::vector<ExceptionalCheckpoint> exceptional_curve;
  std::optional<constructions::LogLogFit> growth;   // log |D| against log |i| for one-parameter families
  std::size_t corrupt_cache_lines = 0;

  std::size_t cache_hits = 0;
  std::map<std::string, double> timing;   // seconds per stage
};

// The deterministic fold over results in point order.
VerificationReport build_report(nlohmann::json family, std::vector<SpecializationResult> results);

nlohmann::json report_json(const VerificationReport &r, bool with_timing = false);
// Header plus one row per result: point, outcome, D, target, certified, note.
std::string report_csv(const VerificationReport &r);

std::string results_jsonl(const std::vector<SpecializationResult> &results);
// Throws PreconditionError naming the first bad line.
std::vector<SpecializationResult> results_from_jsonl(const std::string &text);

} // namespace classforge::harness

#endif
