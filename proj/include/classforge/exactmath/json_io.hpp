#ifndef CLASSFORGE_EXACTMATH_JSON_IO_HPP
#define CLASSFORGE_EXACTMATH_JSON_IO_HPP

#include "classforge/exactmath/poly_fp.hpp"
#include "classforge/exactmath/poly_rat.hpp"

#include <json.hpp>

namespace classforge::exactmath {

// Polynomials travel as arrays of decimal coefficient strings, low degree
// first; integers and rationals as decimal strings ("p/q" for rationals).
nlohmann::json to_json(const Int &v);
nlohmann::json to_json(const Rat &v);
nlohmann::json to_json(const PolyRat &f);
nlohmann::json to_json(const PolyFp &f);

Int int_from_json(const nlohmann::json &j);
Rat rat_from_json(const nlohmann::json &j);
PolyRat poly_from_json(const nlohmann::json &j);
PolyFp polyfp_from_json(const nlohmann::json &j, u64 p);

} // namespace classforge::exactmath

#endif
