#include "classforge/harness/report.hpp"

#include "classforge/error.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace classforge::harness {

using constructions::Outcome;

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

double log_abs(const Int &v) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(e) * std::log(2.0);
}

} // namespace

DistinctCount distinct_field_count(const std::vector<SpecializationResult> &results, std::size_t N) {
  DistinctCount c;
  c.N = std::min(N, results.size());
  std::set<Int> seen;
  for (std::size_t i = 0; i < c.N; ++i)
    if (results[i].field)
      seen.insert(results[i].field->D);
  c.g = seen.size();
  c.n_over_log_n = c.N > 1 ? static_cast<double>(c.N) / std::log(static_cast<double>(c.N)) : 0.0;
  return c;
}

std::vector<std::size_t> default_checkpoints(std::size_t total) {
  std::vector<std::size_t> out;
  for (std::size_t base = 10; base < total; base *= 10)
    for (std::size_t k : {1, 2, 5})
      if (base * k < total)
        out.push_back(base * k);
  if (total > 0)
    out.push_back(total);
  return out;
}

std::vector<ExceptionalCheckpoint> exceptional_set_measure(const std::vector<SpecializationResult> &results,
                                                           const std::vector<std::size_t> &checkpoints) {
  std::vector<ExceptionalCheckpoint> out;
  std::size_t count = 0, upto = 0;
  for (std::size_t N : checkpoints) {
    N = std::min(N, results.size());
    for (; upto < N; ++upto)
      count += results[upto].exceptional();
    out.push_back({N, count, std::sqrt(static_cast<double>(N))});
  }
  return out;
}

VerificationReport build_report(nlohmann::json family, std::vector<SpecializationResult> results) {
  VerificationReport r;
  r.family = std::move(family);
  r.results = std::move(results);
  r.total = r.results.size();
  std::vector<std::pair<double, double>> pts;
  for (const auto &s : r.results) {
    r.certified += s.outcome == Outcome::certified;
    r.exceptional += s.outcome == Outcome::exceptional;
    r.incomplete += s.outcome == Outcome::incomplete;
    if (s.point.size() == 1 && s.field && abs(s.point[0]) > 1)
      pts.push_back({log_abs(s.point[0]), log_abs(s.field->D)});
  }
  r.distinct = distinct_field_count(r.results, r.total);
  r.exceptional_curve = exceptional_set_measure(r.results, default_checkpoints(r.total));
  if (pts.size() >= 3)
    r.growth = constructions::loglog_fit(pts);
  return r;
}

nlohmann::json report_json(const VerificationReport &r, bool with_timing) {
  nlohmann::json curve = nlohmann::json::array();
  for (const auto &c : r.exceptional_curve)
    curve.push_back({{"N", c.N}, {"exceptional", c.exceptional}, {"sqrt_N", c.sqrt_N}});
  nlohmann::json results = nlohmann::json::array();
  for (const auto &s : r.results)
    results.push_back(constructions::to_json(s));
  nlohmann::json j{{"family", r.family},
                   {"total", r.total},
                   {"certified", r.certified},
                   {"exceptional", r.exceptional},
                   {"incomplete", r.incomplete},
                   {"distinct_fields", {{"N", r.distinct.N}, {"g", r.distinct.g}, {"N_over_log_N", r.distinct.n_over_log_n}}},
                   {"exceptional_curve", curve},
                   {"corrupt_cache_lines", r.corrupt_cache_lines},
                   {"results", results}};
  if (r.growth)
    j["growth"] = {{"slope", r.growth->slope}, {"max_residual", r.growth->max_residual}};
  if (with_timing) {
    j["timing"] = r.timing;
    j["cache_hits"] = r.cache_hits;
  }
  return j;
}

std::string report_csv(const VerificationReport &r) {
  std::ostringstream os;
  os << "point,outcome,D,target_rank,certified_rank,note\n";
  for (const auto &s : r.results) {
    std::string pt;
    for (std::size_t i = 0; i < s.point.size(); ++i)
      pt += (i ? " " : "") + s.point[i].get_str();
    os << csv_field(pt) << ',' << constructions::to_string(s.outcome) << ','
       << (s.field ? s.field->D.get_str() : std::string()) << ',' << s.target_rank << ',' << s.certified_rank << ','
       << csv_field(s.note) << '\n';
  }
  return os.str();
}

std::string results_jsonl(const std::vector<SpecializationResult> &results) {
  std::string out;
  for (const auto &s : results)
    out += constructions::to_json(s).dump() + "\n";
  return out;
}

std::vector<SpecializationResult> results_from_jsonl(const std::string &text) {
  std::vector<SpecializationResult> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty())
      continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw PreconditionError("results line " + std::to_string(n) + " is not JSON");
    try {
      out.push_back(constructions::specialization_from_json(j));
    } catch (const std::exception &e) {
      throw PreconditionError("results line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

} // namespace classforge::harness
