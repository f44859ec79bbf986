#include <doctest.h>

#include "classforge/error.hpp"
#include "classforge/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace classforge;
using namespace classforge::harness;
using constructions::FamilyParams;
using constructions::FamilyTag;
using constructions::Outcome;
using exactmath::PolyRat;
using exactmath::Rat;

namespace {

SpecializationResult with_field(long i, long D, Outcome o) {
  SpecializationResult r;
  r.point = {Int(i)};
  r.field = quadclass::fund_disc_from_D(Int(D));
  r.outcome = o;
  return r;
}

std::string temp_path(const std::string &name) {
  auto p = std::filesystem::temp_directory_path() / ("classforge_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

ExperimentConfig nagell_config(long N, std::string cache) {
  FamilyParams p;
  p.m = 3;
  p.N = N;
  ExperimentConfig cfg;
  cfg.family = constructions::family_spec(FamilyTag::nagell_yamamoto, p);
  cfg.cache_path = std::move(cache);
  cfg.threads = 1;
  return cfg;
}

ExperimentConfig super_config(long hi, std::string cache) {
  FamilyParams p;
  p.n = 2;
  p.m = 3;
  p.f = PolyRat({Rat(3), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)});
  p.lo = 1;
  p.hi = hi;
  ExperimentConfig cfg;
  cfg.family = constructions::family_spec(FamilyTag::superelliptic, p);
  cfg.cache_path = std::move(cache);
  cfg.threads = 1;
  return cfg;
}

} // namespace

TEST_CASE("distinct field counts") {
  std::vector<SpecializationResult> same;
  for (long i = 0; i < 40; ++i)
    same.push_back(with_field(i, -23, Outcome::certified));
  CHECK(distinct_field_count(same, 40).g == 1);
  CHECK(distinct_field_count(same, 1).g == 1);
  CHECK(distinct_field_count(same, 1).N == 1);

  std::vector<SpecializationResult> mixed{with_field(1, -23, Outcome::certified), with_field(2, -31, Outcome::certified),
                                          with_field(3, -23, Outcome::certified), with_field(4, 5, Outcome::certified)};
  auto c = distinct_field_count(mixed, 100);
  CHECK(c.N == 4);
  CHECK(c.g == 3);
  CHECK(c.n_over_log_n == doctest::Approx(4.0 / std::log(4.0)));
}

TEST_CASE("exceptional counts at checkpoints") {
  std::vector<SpecializationResult> all_bad;
  for (long i = 0; i < 137; ++i)
    all_bad.push_back(with_field(i, -23, Outcome::exceptional));
  auto cps = default_checkpoints(all_bad.size());
  CHECK(cps.back() == 137);
  for (const auto &c : exceptional_set_measure(all_bad, cps))
    CHECK(c.exceptional == c.N);

  std::mt19937_64 rng(3);
  std::vector<SpecializationResult> random;
  for (long i = 0; i < 500; ++i)
    random.push_back(with_field(i, -23, rng() % 4 == 0 ? Outcome::exceptional : Outcome::certified));
  auto curve = exceptional_set_measure(random, default_checkpoints(random.size()));
  for (std::size_t k = 1; k < curve.size(); ++k) {
    CHECK(curve[k].N >= curve[k - 1].N);
    CHECK(curve[k].exceptional >= curve[k - 1].exceptional);
  }
}

TEST_CASE("log-log slope recovers a pure power") {
  for (int k : {5, 24}) {
    std::vector<std::pair<double, double>> pts;
    for (long i = 10; i <= 200; ++i)
      pts.push_back({std::log(double(i)), std::log(std::pow(double(i), k))});
    CHECK(std::fabs(constructions::loglog_fit(pts).slope - k) <= 0.01 * k);
  }
}

TEST_CASE("report aggregation identity and CSV rows") {
  auto R = run_family(nagell_config(20, ""));
  CHECK(R.total > 0);
  CHECK(R.certified + R.exceptional + R.incomplete == R.total);
  std::string csv = report_csv(R);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == R.total + 1);

  auto back = results_from_jsonl(results_jsonl(R.results));
  REQUIRE(back.size() == R.results.size());
  auto R2 = build_report(R.family, back);
  CHECK(report_json(R2) == report_json(R));
}

TEST_CASE("empty range gives an empty report") {
  FamilyParams p;
  p.n = 2;
  p.f = PolyRat({Rat(3), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)});
  p.lo = 5;
  p.hi = 5;
  p.sample = 0;
  ExperimentConfig cfg;
  cfg.family = constructions::family_spec(FamilyTag::superelliptic, p);
  cfg.family.params.hi = 4;
  auto R = run_family(cfg);
  CHECK(R.total == 0);
  CHECK(R.results.empty());
  CHECK_THROWS_AS(constructions::family_spec(FamilyTag::superelliptic, cfg.family.params), PreconditionError);
}

TEST_CASE("cache rerun is identical and faster") {
  const std::string path = temp_path("cache.jsonl");
  auto t0 = std::chrono::steady_clock::now();
  auto cold = run_family(super_config(60, path));
  auto t1 = std::chrono::steady_clock::now();
  auto warm = run_family(super_config(60, path));
  auto t2 = std::chrono::steady_clock::now();
  auto none = run_family(super_config(60, ""));

  CHECK(cold.cache_hits == 0);
  CHECK(warm.cache_hits == warm.total);
  CHECK(report_json(warm).dump() == report_json(cold).dump());
  CHECK(report_json(none).dump() == report_json(cold).dump());
  CHECK(report_csv(warm) == report_csv(cold));
  double cold_s = std::chrono::duration<double>(t1 - t0).count();
  double warm_s = std::chrono::duration<double>(t2 - t1).count();
  MESSAGE("cold " << cold_s << " s, warm " << warm_s << " s");
  CHECK(warm_s * 10 <= cold_s);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt cache lines are skipped and counted") {
  const std::string path = temp_path("corrupt.jsonl");
  run_family(nagell_config(10, path));
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
    out << "{\"key\": 3}\n";
  }
  ResultCache cache(path);
  CHECK(cache.corrupt_lines() == 2);
  auto R = run_family(nagell_config(10, path));
  CHECK(R.corrupt_cache_lines == 2);
  CHECK(R.cache_hits == R.total);
  std::filesystem::remove(path);
}

TEST_CASE("thread count does not change the report") {
  auto one = nagell_config(25, "");
  auto four = one;
  four.threads = 4;
  CHECK(report_json(run_family(one)).dump() == report_json(run_family(four)).dump());
}

TEST_CASE("cache keys") {
  CHECK(class_key(Int(-31), 3) == "class:-31:3");
  CHECK(fnv1a("") == 14695981039346656037ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  auto a = nagell_config(10, "").family;
  auto b = nagell_config(30, "").family;
  CHECK(point_key(a, {Int(2), Int(1)}) == point_key(b, {Int(2), Int(1)}));
  b.params.m = 5;
  CHECK(point_key(a, {Int(2), Int(1)}) != point_key(b, {Int(2), Int(1)}));
}

TEST_CASE("craig3 at N = 14 yields a certified rank-3 field") {
  FamilyParams p;
  p.N = 14;
  p.sign = -1;
  ExperimentConfig cfg;
  cfg.family = constructions::family_spec(FamilyTag::craig3, p);
  cfg.threads = 1;
  auto R = run_family(cfg);
  bool found = false;
  for (const auto &r : R.results)
    found = found || (r.certified() && r.certified_rank >= 3 && r.field && r.field->D < 0);
  CHECK(found);
}
