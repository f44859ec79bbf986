#include "classforge/exactmath/json_io.hpp"

#include "classforge/error.hpp"

namespace classforge::exactmath {

nlohmann::json to_json(const Int &v) { return v.get_str(); }
nlohmann::json to_json(const Rat &v) { return to_string(v); }

nlohmann::json to_json(const PolyRat &f) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto &c : f.coeffs())
    j.push_back(to_string(c));
  return j;
}

nlohmann::json to_json(const PolyFp &f) {
  nlohmann::json j = nlohmann::json::array();
  for (auto c : f.coeffs())
    j.push_back(std::to_string(c));
  return j;
}

Int int_from_json(const nlohmann::json &j) {
  if (j.is_string())
    return parse_int(j.get<std::string>());
  if (j.is_number_integer())
    return from_i64(j.get<std::int64_t>());
  throw PreconditionError("expected an integer, got " + j.dump());
}

Rat rat_from_json(const nlohmann::json &j) {
  if (j.is_string())
    return parse_rat(j.get<std::string>());
  return Rat(int_from_json(j));
}

PolyRat poly_from_json(const nlohmann::json &j) {
  if (!j.is_array())
    throw PreconditionError("expected a coefficient array, got " + j.dump());
  std::vector<Rat> c;
  for (const auto &e : j)
    c.push_back(rat_from_json(e));
  return PolyRat(std::move(c));
}

PolyFp polyfp_from_json(const nlohmann::json &j, u64 p) { return PolyFp::from_rat(poly_from_json(j), p); }

} // namespace classforge::exactmath
