#include "classforge/constructions/craig.hpp"
#include "classforge/constructions/mestre.hpp"
#include "classforge/constructions/quadratic_families.hpp"
#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/exactmath/json_io.hpp"
#include "classforge/harness/runner.hpp"
#include "classforge/jactor/point_count.hpp"
#include "classforge/quadclass/class_group.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace cf = classforge;
using cf::exactmath::Int;
using cf::exactmath::u64;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kError = 1, kExceptions = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw cf::Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string &path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded())
    throw cf::PreconditionError(path + " is not JSON");
  return j;
}

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out)
    throw cf::Error("cannot write " + path);
}

// Class group structure of D, through the (D, 0) cache entry.
cf::quadclass::ClassGroupStructure cached_class_group(const cf::quadclass::FundDisc &D,
                                                      cf::harness::ResultCache &cache) {
  const std::string key = cf::harness::class_key(D.D, 0);
  if (auto v = cache.find(key)) {
    std::vector<Int> divs;
    for (const auto &e : v->at("structure"))
      divs.push_back(cf::exactmath::int_from_json(e));
    return {divs};
  }
  auto G = cf::quadclass::class_group(D);
  json s = json::array();
  for (const auto &d : G.divisors)
    s.push_back(d.get_str());
  cache.put(key, {{"structure", s}, {"h", G.order().get_str()}});
  cache.flush();
  return G;
}

int cmd_classgroup(const std::string &Dtext, const std::string &cache_path) {
  auto D = cf::quadclass::fund_disc_from_D(cf::exactmath::parse_int(Dtext));
  cf::harness::ResultCache cache(cache_path);
  auto G = cached_class_group(D, cache);
  json s = json::array();
  for (const auto &d : G.divisors)
    s.push_back(d.get_str());
  std::cout << json{{"D", D.D.get_str()}, {"h", G.order().get_str()}, {"structure", s},
                    {"two_rank_genus", cf::quadclass::two_rank_genus(D)}}
                   .dump()
            << "\n";
  return kOk;
}

int cmd_rank(const std::string &Dtext, unsigned long m, const std::string &cache_path) {
  if (m < 2)
    throw cf::PreconditionError("m must be at least 2");
  auto D = cf::quadclass::fund_disc_from_D(cf::exactmath::parse_int(Dtext));
  cf::harness::ResultCache cache(cache_path);
  const std::string key = cf::harness::class_key(D.D, m);
  int rank;
  if (auto v = cache.find(key)) {
    rank = v->at("rank").get<int>();
  } else {
    rank = cf::quadclass::m_rank(cached_class_group(D, cache), Int(static_cast<unsigned long>(m)));
    cache.put(key, {{"rank", rank}});
    cache.flush();
  }
  std::cout << json{{"D", D.D.get_str()}, {"m", m}, {"rank", rank}}.dump() << "\n";
  return kOk;
}

int cmd_family(const std::string &tag, const std::string &config, const std::string &cache_opt, unsigned threads,
               const std::string &results_out, const std::string &report_out, const std::string &format) {
  json j = config.empty() ? json::object() : read_json(config);
  json spec_json = j.contains("params") ? j : json{{"params", j}};
  spec_json["tag"] = tag;
  cf::harness::ExperimentConfig cfg;
  cfg.family = cf::constructions::family_spec_from_json(spec_json);
  cfg.threads = threads;
  cfg.cache_path = cf::harness::cache_path_from_env(cache_opt.empty() ? j.value("cache", std::string()) : cache_opt);
  auto R = cf::harness::run_family(cfg);
  if (!results_out.empty())
    write_text(results_out, cf::harness::results_jsonl(R.results));
  write_text(report_out, format == "csv" ? cf::harness::report_csv(R) : cf::harness::report_json(R).dump(2) + "\n");
  std::cerr << "points " << R.total << ", certified " << R.certified << ", exceptional " << R.exceptional
            << ", incomplete " << R.incomplete << ", cache hits " << R.cache_hits;
  for (const auto &[stage, secs] : R.timing)
    std::cerr << ", " << stage << " " << secs << " s";
  std::cerr << "\n";
  return R.certified == R.total ? kOk : kExceptions;
}

int cmd_jacobian_verify(const std::string &path, unsigned long m, u64 prime, const std::string &cache_path) {
  json j = read_json(path);
  if (j.contains("divisors")) {
    auto cert = cf::jactor::torsion_certificate_from_json(j);
    if (cert.m != m)
      throw cf::PreconditionError("certificate is for m = " + std::to_string(cert.m));
    bool ok = cf::jactor::verify_certificate(cert);
    std::cout << json{{"certificate", ok}, {"m", m}, {"rank", cert.divisors.size()}, {"p", cert.curve.p}}.dump() << "\n";
    return ok ? kOk : kExceptions;
  }
  cf::jactor::HyperCurve C = cf::jactor::curve_from_json(j);
  if (!C.over_q())
    throw cf::PreconditionError("jacobian verify expects a curve over Q or a torsion certificate");
  std::vector<u64> primes;
  if (prime) {
    primes.push_back(prime);
  } else {
    auto bad = cf::jactor::bad_primes(C.f_q);
    for (u64 p = 3; primes.size() < 3; p += 2)
      if (cf::exactmath::is_probable_prime(cf::exactmath::from_u64(p)) && p % m != 0 &&
          std::find(bad.begin(), bad.end(), cf::exactmath::from_u64(p)) == bad.end())
        primes.push_back(p);
  }
  cf::harness::ResultCache cache(cache_path);
  json out = json::array();
  bool all = true;
  for (u64 p : primes) {
    cf::jactor::HyperCurve Cp = C.reduce(p);
    const std::string key = cf::harness::jacobian_key(C, p);
    Int order;
    if (auto v = cache.find(key)) {
      order = cf::exactmath::int_from_json(v->at("order"));
    } else {
      order = cf::jactor::jacobian_order(Cp);
      cache.put(key, {{"order", order.get_str()}});
    }
    bool div = order % static_cast<unsigned long>(m) == 0;
    all = all && div;
    out.push_back({{"p", p}, {"order", order.get_str()}, {"divisible_by_m", div}});
  }
  cache.flush();
  std::cout << json{{"m", m}, {"primes", out}}.dump() << "\n";
  return all ? kOk : kExceptions;
}

int cmd_identity_check(const std::string &tag, unsigned long m, const std::string &solution) {
  std::vector<cf::constructions::IdentityCheck> checks;
  auto tg = cf::constructions::family_tag_from_string(tag);
  switch (tg) {
  case cf::constructions::FamilyTag::craig3:
    checks = cf::constructions::craig_identity_report();
    break;
  case cf::constructions::FamilyTag::ternary:
    checks = cf::constructions::ternary_identity_report(m);
    break;
  case cf::constructions::FamilyTag::mestre:
    checks = {{"Kubert factorization and order-10 point over Q(u)", cf::constructions::kubert_generic_check()},
              {"u1(u1^2+u1-1) = u2(u2^2+u2-1) = u3(u3^2+u3-1)", cf::constructions::mestre_invariance_check()}};
    break;
  case cf::constructions::FamilyTag::craig4_checker:
    if (solution.empty())
      throw cf::PreconditionError("craig4_checker needs --solution");
    checks = cf::constructions::craig4_report(cf::constructions::craig4_from_json(read_json(solution)));
    break;
  default:
    throw cf::PreconditionError("no identity check for " + tag);
  }
  bool all = true;
  for (const auto &c : checks) {
    std::cout << (c.holds ? "PASS " : "FAIL ") << c.name << "\n";
    all = all && c.holds;
  }
  return all ? kOk : kExceptions;
}

int cmd_report(const std::string &path, const std::string &format) {
  auto R = cf::harness::build_report(nullptr, cf::harness::results_from_jsonl(read_file(path)));
  std::cout << (format == "csv" ? cf::harness::report_csv(R) : cf::harness::report_json(R).dump(2) + "\n");
  return R.certified == R.total ? kOk : kExceptions;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"class group rank certificates and family experiments"};
  app.require_subcommand(1);
  std::string cache_opt;
  app.add_option("--cache", cache_opt, "line-JSON cache file (CLASSFORGE_CACHE overrides)");

  std::string D;
  unsigned long m = 3;
  auto *cg = app.add_subcommand("classgroup", "class group structure of Q(sqrt D)");
  cg->add_option("D", D, "fundamental discriminant")->required();

  auto *rk = app.add_subcommand("rank", "m-rank of the class group");
  rk->add_option("D", D, "fundamental discriminant")->required();
  rk->add_option("--m", m, "m")->required();

  std::string tag, config, results_out, report_out = "-", format = "json";
  unsigned threads = 0;
  auto *fam = app.add_subcommand("family", "run a family experiment");
  fam->add_option("tag", tag, "family tag")->required();
  fam->add_option("--config", config, "JSON file with the family parameters");
  fam->add_option("--threads", threads, "worker threads (0: all cores)");
  fam->add_option("--results", results_out, "write per-point results as line-JSON");
  fam->add_option("--report", report_out, "report file ('-' for stdout)");
  fam->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));

  std::string curve_path;
  u64 prime = 0;
  auto *jac = app.add_subcommand("jacobian", "Jacobian checks");
  jac->require_subcommand(1);
  auto *jv = jac->add_subcommand("verify", "m | #Jac(F_p) at good primes, or re-verify a torsion certificate");
  jv->add_option("curve", curve_path, "curve or certificate JSON")->required();
  jv->add_option("--m", m, "m")->required();
  jv->add_option("--prime", prime, "a single prime");

  std::string solution;
  auto *ic = app.add_subcommand("identity-check", "exact polynomial identities of a construction");
  ic->add_option("tag", tag, "craig3, ternary, mestre or craig4_checker")->required();
  ic->add_option("--m", m, "exponent for ternary");
  ic->add_option("--solution", solution, "craig4_checker solution JSON");

  std::string results_in;
  auto *rp = app.add_subcommand("report", "aggregate a line-JSON results file");
  rp->add_option("results", results_in, "results file")->required();
  rp->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? kOk : kError;
  }
  const std::string cache_path = cf::harness::cache_path_from_env(cache_opt);
  try {
    if (*cg)
      return cmd_classgroup(D, cache_path);
    if (*rk)
      return cmd_rank(D, m, cache_path);
    if (*fam)
      return cmd_family(tag, config, cache_opt, threads, results_out, report_out, format);
    if (*jv)
      return cmd_jacobian_verify(curve_path, m, prime, cache_path);
    if (*ic)
      return cmd_identity_check(tag, m, solution);
    if (*rp)
      return cmd_report(results_in, format);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
