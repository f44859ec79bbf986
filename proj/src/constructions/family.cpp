#include "classforge/constructions/family.hpp"

#include "classforge/constructions/craig.hpp"
#include "classforge/constructions/mestre.hpp"
#include "classforge/constructions/quadratic_families.hpp"
#include "classforge/constructions/ri.hpp"
#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/exactmath/json_io.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace classforge::constructions {

namespace {

struct TagName {
  FamilyTag tag;
  const char *name;
};
const TagName kTags[] = {
    {FamilyTag::nagell_yamamoto, "nagell_yamamoto"}, {FamilyTag::yamamoto_rank2, "yamamoto_rank2"},
    {FamilyTag::craig3, "craig3"},                   {FamilyTag::craig4_checker, "craig4_checker"},
    {FamilyTag::ternary, "ternary"},                 {FamilyTag::mestre, "mestre"},
    {FamilyTag::superelliptic, "superelliptic"},     {FamilyTag::brumer_rosen, "brumer_rosen"},
    {FamilyTag::qn, "qn"},                           {FamilyTag::thlev2, "thlev2"},
};

void require(bool ok, const std::string &what) {
  if (!ok)
    throw PreconditionError(what);
}

std::vector<std::vector<Int>> range_points(long lo, long hi) {
  std::vector<std::vector<Int>> out;
  for (long i = lo; i <= hi; ++i)
    out.push_back({Int(i)});
  return out;
}

template <std::size_t K> std::vector<std::vector<Int>> widen(const std::vector<std::array<Int, K>> &pts) {
  std::vector<std::vector<Int>> out;
  for (const auto &p : pts)
    out.emplace_back(p.begin(), p.end());
  return out;
}

SpecializationResult plain(std::vector<Int> point, bool ok, std::string note) {
  SpecializationResult r;
  r.point = std::move(point);
  r.outcome = ok ? Outcome::certified : Outcome::exceptional;
  r.note = std::move(note);
  return r;
}

} // namespace

std::string to_string(FamilyTag t) {
  for (const auto &e : kTags)
    if (e.tag == t)
      return e.name;
  return "?";
}

FamilyTag family_tag_from_string(const std::string &s) {
  for (const auto &e : kTags)
    if (s == e.name)
      return e.tag;
  throw PreconditionError("unknown family tag: " + s);
}

std::vector<FamilyTag> all_family_tags() {
  std::vector<FamilyTag> out;
  for (const auto &e : kTags)
    out.push_back(e.tag);
  return out;
}

FamilySpec family_spec(FamilyTag tag, FamilyParams p) {
  FamilySpec s;
  s.tag = tag;
  require(p.lo <= p.hi, "empty parameter range");
  require(p.N >= 1, "N must be positive");
  const bool uses_m = tag != FamilyTag::craig3 && tag != FamilyTag::craig4_checker && tag != FamilyTag::mestre &&
                      tag != FamilyTag::brumer_rosen;
  if (uses_m)
    require(p.m > 1, "m must exceed 1");
  switch (tag) {
  case FamilyTag::nagell_yamamoto:
    s.validity = p.q.empty() ? "(x, y) = 1, y^2 - 4x^m < 0" : "(x, y) = 1, y^2 - 4x^m < 0, Yamamoto congruences at q";
    break;
  case FamilyTag::yamamoto_rank2:
    s.validity = "(X, Z) = 1, X + Z odd, negative radicand";
    break;
  case FamilyTag::craig3:
    require(p.sign == 1 || p.sign == -1, "sign must be +1 or -1");
    s.validity = "(3s, t) = 1, s even, (s + 2^i t, 7) = 1 for i = 0, 1, 2";
    break;
  case FamilyTag::craig4_checker:
    require(p.solution.has_value(), "craig4_checker needs a solution record");
    s.validity = "user-supplied x_i, y_i, z_i in Q[t]";
    break;
  case FamilyTag::ternary:
    s.validity = "(x^m - y^m, z) = (x^m - z^m, y) = (y^m - z^m, x) = 1";
    break;
  case FamilyTag::mestre:
    if (p.primes.empty())
      for (u64 q = 7; q < 50; q += 2)
        if (exactmath::is_probable_prime(exactmath::from_u64(q)))
          p.primes.push_back(q);
    s.validity = "t with nonzero denominators and a nonsingular genus-5 model";
    break;
  case FamilyTag::superelliptic:
    require(p.n >= 2, "n must be at least 2");
    super_family(p.n, p.f, p.m);
    s.validity = "gcd(deg f, n) = 1, f squarefree; fibres of x - 1/M";
    break;
  case FamilyTag::brumer_rosen: {
    require(p.n >= 2, "n must be at least 2");
    require(!p.factors.empty(), "brumer_rosen needs linear factors");
    std::vector<Rat> roots;
    for (const auto &[a, b] : p.factors) {
      require(a != 0, "linear factor with zero leading coefficient");
      roots.push_back(Rat(b, a));
    }
    std::sort(roots.begin(), roots.end());
    require(std::adjacent_find(roots.begin(), roots.end()) == roots.end(), "f must have distinct roots");
    s.validity = "(a_i x - b_i, a_j x - b_j) = 1 for all i != j";
    break;
  }
  case FamilyTag::qn:
    require(p.r1 >= 0 && p.r1 <= p.n && (p.n - p.r1) % 2 == 0, "need r1 + 2 r2 = n with r1, r2 >= 0");
    qn_case(p.m, p.n, p.r1);
    s.validity = "rp1 and rp2 at every y, exactly r1 real roots above the threshold";
    break;
  case FamilyTag::thlev2: {
    const long k = static_cast<long>(p.m) - 1;
    require(p.n > k * k, "thlev2 needs n > (m-1)^2");
    s.validity = "n > (m-1)^2; fibres of phi = b (y - h) / x^{r-n}";
    break;
  }
  }
  s.params = std::move(p);
  return s;
}

nlohmann::json to_json(const FamilySpec &s) {
  const FamilyParams &p = s.params;
  nlohmann::json j{{"m", p.m}, {"n", p.n}, {"r1", p.r1},     {"N", p.N},
                   {"lo", p.lo}, {"hi", p.hi}, {"sign", p.sign}, {"sample", p.sample}, {"seed", p.seed}};
  if (!p.q.empty()) {
    j["q"] = nlohmann::json::array();
    for (const auto &v : p.q)
      j["q"].push_back(v.get_str());
  }
  if (!p.f.is_zero()) {
    j["f"] = exactmath::to_json(p.f);
  }
  if (!p.factors.empty()) {
    j["factors"] = nlohmann::json::array();
    for (const auto &[a, b] : p.factors)
      j["factors"].push_back({a.get_str(), b.get_str()});
  }
  if (!p.primes.empty())
    j["primes"] = p.primes;
  if (p.solution)
    j["solution"] = to_json(*p.solution);
  return {{"tag", to_string(s.tag)}, {"params", j}, {"validity", s.validity}};
}

FamilySpec family_spec_from_json(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string())
    throw PreconditionError("family spec needs a string tag");
  FamilyParams p;
  const nlohmann::json P = j.value("params", nlohmann::json::object());
  try {
    p.m = P.value("m", p.m);
    p.n = P.value("n", p.n);
    p.r1 = P.value("r1", p.r1);
    p.N = P.value("N", p.N);
    p.lo = P.value("lo", p.lo);
    p.hi = P.value("hi", p.hi);
    p.sign = P.value("sign", p.sign);
    p.sample = P.value("sample", p.sample);
    p.seed = P.value("seed", p.seed);
    if (P.contains("primes"))
      p.primes = P["primes"].get<std::vector<u64>>();
  } catch (const nlohmann::json::exception &e) {
    throw PreconditionError(std::string("bad family parameter: ") + e.what());
  }
  for (const auto &v : P.value("q", nlohmann::json::array()))
    p.q.push_back(exactmath::int_from_json(v));
  p.f = exactmath::poly_from_json(P.value("f", nlohmann::json::array()));
  for (const auto &v : P.value("factors", nlohmann::json::array())) {
    if (!v.is_array() || v.size() != 2)
      throw PreconditionError("a linear factor is a pair [a, b] for a x - b");
    p.factors.push_back({exactmath::int_from_json(v[0]), exactmath::int_from_json(v[1])});
  }
  if (P.contains("solution"))
    p.solution = craig4_from_json(P["solution"]);
  return family_spec(family_tag_from_string(j["tag"].get<std::string>()), std::move(p));
}

Family::Family(FamilySpec spec, bool build) : spec_(std::move(spec)), built_(build) {
  if (!build)
    return;
  const FamilyParams &p = spec_.params;
  switch (spec_.tag) {
  case FamilyTag::qn:
    qn_ = qn_build(p.m, p.n, p.r1);
    qn_y0_ = qn_threshold(qn_discriminant(*qn_), qn_->g_coefficients().back());
    break;
  case FamilyTag::thlev2:
    thlev2_ = thlev2_build(p.m, p.n);
    break;
  case FamilyTag::superelliptic:
    super_ = super_family(p.n, p.f, p.m);
    break;
  default:
    break;
  }
}

std::vector<std::vector<Int>> Family::points() const {
  const FamilyParams &p = spec_.params;
  std::vector<std::vector<Int>> pts;
  switch (spec_.tag) {
  case FamilyTag::nagell_yamamoto:
    pts = p.q.empty() ? widen(nagell_points(p.m, p.N)) : widen(yamamoto_points(p.m, p.q, p.N));
    break;
  case FamilyTag::yamamoto_rank2:
    pts = widen(ri_class_points(p.m, p.N));
    break;
  case FamilyTag::craig3:
    for (const auto &[s, t] : craig_pairs_by_size(p.N, p.sign))
      pts.push_back({s, t});
    break;
  case FamilyTag::craig4_checker:
    pts.push_back({});
    break;
  case FamilyTag::ternary:
    pts = widen(ternary_points(p.m, p.N));
    break;
  default:
    pts = range_points(p.lo, p.hi);
    break;
  }
  if (p.sample == 0 || p.sample >= pts.size())
    return pts;
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(p.seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(p.sample);
  std::sort(idx.begin(), idx.end());
  std::vector<std::vector<Int>> out;
  for (auto i : idx)
    out.push_back(pts[i]);
  return out;
}

SpecializationResult Family::specialize(const std::vector<Int> &pt) const {
  if (!built_)
    throw Error("family was constructed for point enumeration only");
  const FamilyParams &p = spec_.params;
  try {
    switch (spec_.tag) {
    case FamilyTag::nagell_yamamoto:
      return nagell_point(pt.at(0), pt.at(1), p.m);
    case FamilyTag::yamamoto_rank2:
      return ri_class_point(p.m, pt.at(0), pt.at(1));
    case FamilyTag::craig3:
      return craig_class_rank(pt.at(0), pt.at(1));
    case FamilyTag::craig4_checker: {
      std::string note;
      for (const auto &c : craig4_report(*p.solution))
        if (!c.holds)
          note += (note.empty() ? "fails: " : "; ") + c.name;
      return plain(pt, note.empty(), note.empty() ? "all identities hold" : note);
    }
    case FamilyTag::ternary:
      return ternary_point(pt.at(0), pt.at(1), pt.at(2), p.m);
    case FamilyTag::mestre: {
      MestreReport R = mestre_check(Rat(pt.at(0)), p.primes);
      bool ok = R.genus_five && R.three_rational_roots && R.all_divisible && R.model.parametrization_holds;
      return plain(pt, ok, R.evidence);
    }
    case FamilyTag::superelliptic:
      return super_specialize(*super_, pt.at(0));
    case FamilyTag::brumer_rosen:
      return brumer_rosen_check(p.n, p.factors, pt.at(0));
    case FamilyTag::qn: {
      const Int &y = pt.at(0);
      bool rp = qn_rp1(*qn_, y) && qn_rp2(*qn_, y);
      bool irr = qn_irreducible(qn_->g_at(y));
      std::string note = std::string("rp1/rp2 ") + (rp ? "hold" : "fail") + ", g_y " +
                         (irr ? "irreducible" : "not shown irreducible");
      bool sig_ok = true;
      if (y >= qn_y0_) {
        int s = qn_signature(*qn_, y);
        sig_ok = s == p.r1;
        note += ", " + std::to_string(s) + " real roots";
      }
      return plain(pt, rp && irr && sig_ok, note);
    }
    case FamilyTag::thlev2: {
      PolyRat fibre = thlev2_fibre(*thlev2_, pt.at(0));
      bool deg = fibre.degree() == p.n;
      bool irr = deg && qn_irreducible(fibre);
      return plain(pt, deg && irr,
                   "fibre degree " + std::to_string(fibre.degree()) + (irr ? ", irreducible" : ", not shown irreducible"));
    }
    }
  } catch (const BudgetExceeded &e) {
    SpecializationResult r;
    r.point = pt;
    r.outcome = Outcome::incomplete;
    r.note = e.what();
    return r;
  } catch (const PreconditionError &e) {
    return plain(pt, false, e.what());
  }
  throw Error("unhandled family tag");
}

} // namespace classforge::constructions
