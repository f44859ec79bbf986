#include "classforge/harness/runner.hpp"

#include <atomic>
#include <optional>
#include <chrono>
#include <thread>

namespace classforge::harness {

using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

} // namespace

VerificationReport run_family(const ExperimentConfig &cfg) {
  auto t0 = Clock::now();
  ResultCache cache(cfg.cache_path);
  double t_cache = since(t0);

  auto t1 = Clock::now();
  std::vector<std::vector<Int>> points = constructions::Family(cfg.family, false).points();
  std::vector<std::string> keys(points.size());
  std::vector<SpecializationResult> results(points.size());
  std::vector<char> hit(points.size(), 0);
  std::size_t misses = 0;
  const std::string digest = spec_digest(cfg.family);
  for (std::size_t i = 0; i < points.size(); ++i) {
    keys[i] = point_key(digest, points[i]);
    if (auto v = cache.find(keys[i])) {
      try {
        results[i] = constructions::specialization_from_json(*v);
        hit[i] = 1;
      } catch (const std::exception &) {
      }
    }
    misses += !hit[i];
  }
  // The family's own setup (QN search, series roots) runs only when needed.
  std::optional<constructions::Family> family;
  if (misses)
    family.emplace(cfg.family);
  double t_setup = since(t1);

  auto t2 = Clock::now();
  unsigned width = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      if (hit[i])
        continue;
      try {
        results[i] = family->specialize(points[i]);
      } catch (const std::exception &e) {
        SpecializationResult r;
        r.point = points[i];
        r.outcome = constructions::Outcome::incomplete;
        r.note = std::string("error: ") + e.what();
        results[i] = std::move(r);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < width; ++k)
    pool.emplace_back(work);
  work();
  for (auto &t : pool)
    t.join();
  double t_verify = since(t2);

  auto t3 = Clock::now();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    hits += hit[i];
    if (!hit[i])
      cache.put(keys[i], constructions::to_json(results[i]));
  }
  cache.flush();
  VerificationReport R = build_report(constructions::to_json(cfg.family), std::move(results));
  R.corrupt_cache_lines = cache.corrupt_lines();
  R.cache_hits = hits;
  R.timing = {{"cache_load", t_cache}, {"setup", t_setup}, {"verify", t_verify}, {"report", since(t3)}};
  return R;
}

} // namespace classforge::harness
