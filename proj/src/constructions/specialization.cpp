#include "classforge/constructions/specialization.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/json_io.hpp"
#include "classforge/quadclass/ideal.hpp"

namespace classforge::constructions {

using namespace exactmath;

std::string to_string(Outcome o) {
  switch (o) {
  case Outcome::certified:
    return "certified";
  case Outcome::exceptional:
    return "exceptional";
  case Outcome::incomplete:
    return "incomplete";
  }
  return "incomplete";
}

Outcome outcome_from_string(const std::string &s) {
  if (s == "certified")
    return Outcome::certified;
  if (s == "exceptional")
    return Outcome::exceptional;
  if (s == "incomplete")
    return Outcome::incomplete;
  throw PreconditionError("unknown outcome '" + s + "'");
}

nlohmann::json to_json(const SpecializationResult &r) {
  nlohmann::json j;
  j["point"] = nlohmann::json::array();
  for (const auto &v : r.point)
    j["point"].push_back(exactmath::to_json(v));
  if (r.field)
    j["D"] = exactmath::to_json(r.field->D);
  if (r.curve)
    j["curve"] = jactor::to_json(*r.curve);
  j["class_certificates"] = nlohmann::json::array();
  for (const auto &c : r.class_certificates)
    j["class_certificates"].push_back(quadclass::to_json(c));
  j["torsion_certificates"] = nlohmann::json::array();
  for (const auto &c : r.torsion_certificates)
    j["torsion_certificates"].push_back(jactor::to_json(c));
  j["target_rank"] = r.target_rank;
  j["certified_rank"] = r.certified_rank;
  j["outcome"] = to_string(r.outcome);
  j["note"] = r.note;
  return j;
}

SpecializationResult specialization_from_json(const nlohmann::json &j) {
  SpecializationResult r;
  for (const auto &v : j.at("point"))
    r.point.push_back(int_from_json(v));
  if (j.contains("D")) {
    // Validated when stored; only the residue class is rechecked.
    Int D = int_from_json(j.at("D"));
    Int m4 = D % 4;
    if (m4 < 0)
      m4 += 4;
    if (D == 0 || m4 == 2 || m4 == 3)
      throw PreconditionError("not a discriminant: " + D.get_str());
    r.field = quadclass::FundDisc{D, m4 == 0 ? Int(D / 4) : D};
  }
  if (j.contains("curve"))
    r.curve = jactor::curve_from_json(j.at("curve"));
  for (const auto &c : j.at("class_certificates"))
    r.class_certificates.push_back(quadclass::certificate_from_json(c));
  for (const auto &c : j.at("torsion_certificates"))
    r.torsion_certificates.push_back(jactor::torsion_certificate_from_json(c));
  r.target_rank = j.at("target_rank").get<int>();
  r.certified_rank = j.at("certified_rank").get<int>();
  r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  r.note = j.at("note").get<std::string>();
  return r;
}

bool verify_result(const SpecializationResult &r) {
  for (const auto &c : r.class_certificates) {
    if (r.field && c.D != r.field->D)
      return false;
    if (!quadclass::verify_certificate(c))
      return false;
  }
  for (const auto &c : r.torsion_certificates)
    if (!jactor::verify_certificate(c))
      return false;
  if (r.outcome == Outcome::certified && r.certified_rank < r.target_rank)
    return false;
  return true;
}

bool excluded_small_field(const quadclass::FundDisc &D) { return D.D == -3 || D.D == -4; }

SpecializationResult certify_splittings(std::vector<Int> point, const std::vector<Splitting> &splittings,
                                        unsigned long m, int target_rank, const quadclass::CycleBudget &budget) {
  SpecializationResult r;
  r.point = std::move(point);
  r.target_rank = target_rank;
  if (splittings.empty())
    throw PreconditionError("no splittings supplied");
  Int radicand = splittings[0].A * splittings[0].A - 4 * ipow(splittings[0].N, m);
  for (const auto &s : splittings)
    if (s.A * s.A - 4 * ipow(s.N, m) != radicand)
      throw MismatchError("splittings do not share the radicand A^2 - 4N^m");
  if (radicand == 0 || is_square(radicand)) {
    r.outcome = Outcome::exceptional;
    r.note = "radicand is a square; the field degenerates to Q";
    return r;
  }
  try {
    r.field = quadclass::fundamental_discriminant(radicand);
  } catch (const BudgetExceeded &e) {
    r.outcome = Outcome::incomplete;
    r.note = e.what();
    return r;
  }
  if (excluded_small_field(*r.field)) {
    r.outcome = Outcome::exceptional;
    r.note = "excluded small field D = " + exactmath::to_string(r.field->D);
    return r;
  }
  if (r.field->D > 0 && m % 2 == 0) {
    r.outcome = Outcome::incomplete;
    r.note = "even m over a real field: narrow certificates unsupported";
    return r;
  }
  try {
    std::vector<quadclass::QuadForm> forms;
    for (const auto &s : splittings)
      forms.push_back(quadclass::ideal_class_from_mth_power(s.N, s.A, *r.field, m));
    auto cert = quadclass::certify_m_rank(forms, Int(m), budget);
    r.certified_rank = cert.rank();
    r.class_certificates.push_back(std::move(cert));
  } catch (const CertificateError &e) {
    r.outcome = Outcome::exceptional;
    r.note = e.what();
    return r;
  } catch (const BudgetExceeded &e) {
    r.outcome = Outcome::incomplete;
    r.note = e.what();
    return r;
  }
  if (r.certified_rank >= target_rank) {
    r.outcome = Outcome::certified;
  } else {
    r.outcome = Outcome::exceptional;
    r.note = "certified rank " + std::to_string(r.certified_rank) + " below target " + std::to_string(target_rank);
  }
  return r;
}

} // namespace classforge::constructions
