#ifndef CLASSFORGE_HARNESS_RUNNER_HPP
#define CLASSFORGE_HARNESS_RUNNER_HPP

#include "classforge/harness/cache.hpp"
#include "classforge/harness/report.hpp"

#include <string>

namespace classforge::harness {

struct ExperimentConfig {
  constructions::FamilySpec family;
  unsigned threads = 0;        // 0: hardware concurrency
  std::string cache_path;      // empty: no cache
};

/* Points are handed to a worker pool; cached points are not recomputed.
 * Workers only read the cache; the calling thread appends new results in
 * point order once all workers finish. Per-point errors become incomplete
 * results. */
VerificationReport run_family(const ExperimentConfig &cfg);

} // namespace classforge::harness

#endif
