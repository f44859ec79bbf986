#include "classforge/quadclass/certificate.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/json_io.hpp"

namespace classforge::quadclass {

using namespace exactmath;

namespace {

// All exponent vectors in (Z/m)^k in mixed-radix order, zero vector first.
std::vector<std::vector<unsigned>> all_vectors(std::size_t k, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> v(k, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < k && ++v[i] == m)
      v[i++] = 0;
    if (i == k)
      break;
  }
  return out;
}

QuadForm combination(const std::vector<std::vector<QuadForm>> &pows, const std::vector<unsigned> &v,
                     const Int &D) {
  QuadForm f = principal_form(D);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      f = compose(f, pows[i][v[i]]);
  return f;
}

std::vector<std::vector<QuadForm>> power_table(const std::vector<QuadForm> &forms, unsigned m) {
  std::vector<std::vector<QuadForm>> pows;
  for (const auto &f : forms) {
    std::vector<QuadForm> row{principal_form(f.disc()), reduce(f)};
    for (unsigned e = 2; e < m; ++e)
      row.push_back(compose(row.back(), row[1]));
    pows.push_back(std::move(row));
  }
  return pows;
}

void check_inputs(const std::vector<QuadForm> &classes, const Int &m, const CycleBudget &budget) {
  if (m < 2)
    throw PreconditionError("rank certificates need m >= 2");
  Int D = classes[0].disc();
  for (const auto &f : classes)
    if (f.disc() != D)
      throw MismatchError("classes have different discriminants");
  if (D > 0 && mod(m, 2) == 0)
    throw PreconditionError("even m is refused for D > 0 (narrow and wide class groups may differ)");
  std::vector<QuadForm> mth;
  for (const auto &f : classes)
    mth.push_back(power(f, m));
  auto flags = principal_flags(mth, budget);
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (!flags[i])
      throw PreconditionError("class " + classes[i].to_string() + " does not have principal m-th power");
}

} // namespace

RankCertificate certify_m_rank(const std::vector<QuadForm> &classes, const Int &m, const CycleBudget &budget) {
  RankCertificate cert;
  cert.m = m;
  if (classes.empty())
    return cert;
  check_inputs(classes, m, budget);
  Int D = classes[0].disc();
  cert.D = D;
  if (!m.fits_uint_p() || m > 1000)
    throw PreconditionError("m too large for exhaustive combination checks");
  unsigned mm = static_cast<unsigned>(m.get_ui());
  std::size_t k = classes.size();
  double combos = 1;
  for (std::size_t i = 0; i < k; ++i)
    combos *= mm;
  if (combos > 2e5)
    throw PreconditionError("too many combinations to certify exhaustively");
  auto pows = power_table(classes, mm);
  auto vecs = all_vectors(k, mm);
  std::vector<QuadForm> forms;
  forms.reserve(vecs.size());
  for (const auto &v : vecs)
    forms.push_back(combination(pows, v, D));
  auto flags = principal_flags(forms, budget);
  // Largest subset (ties broken by lowest mask) with no principal combination.
  unsigned best_mask = 0;
  int best_size = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best_size)
      continue;
    bool ok = true;
    for (std::size_t idx = 1; idx < vecs.size() && ok; ++idx) {
      bool inside = true, nonzero = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (vecs[idx][i] && !(mask >> i & 1))
          inside = false;
        if (vecs[idx][i])
          nonzero = true;
      }
      if (inside && nonzero && flags[idx])
        ok = false;
    }
    if (ok) {
      best_mask = mask;
      best_size = size;
    }
  }
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < k; ++i)
    if (best_mask >> i & 1) {
      chosen.push_back(i);
      cert.forms.push_back(reduce(classes[i]));
    }
  for (std::size_t idx = 1; idx < vecs.size(); ++idx) {
    bool inside = true;
    for (std::size_t i = 0; i < k; ++i)
      if (vecs[idx][i] && !(best_mask >> i & 1))
        inside = false;
    if (!inside)
      continue;
    std::vector<unsigned> e;
    for (auto i : chosen)
      e.push_back(vecs[idx][i]);
    cert.transcript.push_back({e, static_cast<bool>(flags[idx])});
  }
  return cert;
}

bool verify_certificate(const RankCertificate &cert, const CycleBudget &budget) {
  if (cert.forms.empty())
    return cert.transcript.empty();
  try {
    check_inputs(cert.forms, cert.m, budget);
  } catch (const PreconditionError &) {
    return false;
  }
  unsigned mm = static_cast<unsigned>(cert.m.get_ui());
  auto pows = power_table(cert.forms, mm);
  auto vecs = all_vectors(cert.forms.size(), mm);
  std::vector<QuadForm> forms;
  for (std::size_t i = 1; i < vecs.size(); ++i)
    forms.push_back(combination(pows, vecs[i], cert.D));
  auto flags = principal_flags(forms, budget);
  if (cert.transcript.size() != forms.size())
    return false;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (flags[i])
      return false;
    if (cert.transcript[i].exponents != vecs[i + 1] || cert.transcript[i].principal)
      return false;
  }
  return true;
}

nlohmann::json to_json(const RankCertificate &cert) {
  nlohmann::json j;
  j["D"] = cert.D.get_str();
  j["m"] = cert.m.get_str();
  j["forms"] = nlohmann::json::array();
  for (const auto &f : cert.forms)
    j["forms"].push_back({f.a.get_str(), f.b.get_str(), f.c.get_str()});
  j["transcript"] = nlohmann::json::array();
  for (const auto &t : cert.transcript)
    j["transcript"].push_back({t.exponents, t.principal});
  j["rank"] = cert.rank();
  return j;
}

RankCertificate certificate_from_json(const nlohmann::json &j) {
  RankCertificate c;
  c.D = int_from_json(j.at("D"));
  c.m = int_from_json(j.at("m"));
  for (const auto &f : j.at("forms"))
    c.forms.push_back({int_from_json(f.at(0)), int_from_json(f.at(1)), int_from_json(f.at(2))});
  for (const auto &t : j.at("transcript"))
    c.transcript.push_back({t.at(0).get<std::vector<unsigned>>(), t.at(1).get<bool>()});
  return c;
}

} // namespace classforge::quadclass
