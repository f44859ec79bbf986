#include "classforge/constructions/craig4.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/json_io.hpp"
#include "classforge/exactmath/poly_fp.hpp"
#include "classforge/jactor/torsion.hpp"

#include <string>

namespace classforge::constructions {

using exactmath::PolyFp;

namespace {

const char *const kKeys[9] = {"x0", "y0", "z0", "x1", "y1", "z1", "x2", "y2", "z2"};

PolyRat *slot(CraigTwoSolution &s, int k) {
  PolyRat *v[9] = {&s.x0, &s.y0, &s.z0, &s.x1, &s.y1, &s.z1, &s.x2, &s.y2, &s.z2};
  return v[k];
}

PolyRat cube(const PolyRat &a) { return a * a * a; }

} // namespace

CraigTwoSolution craig4_from_json(const nlohmann::json &j) {
  CraigTwoSolution s;
  for (int k = 0; k < 9; ++k) {
    if (!j.contains(kKeys[k]) || !j[kKeys[k]].is_array())
      throw PreconditionError(std::string("missing coefficient array ") + kKeys[k]);
    *slot(s, k) = exactmath::poly_from_json(j[kKeys[k]]);
  }
  return s;
}

nlohmann::json to_json(const CraigTwoSolution &s) {
  nlohmann::json j;
  CraigTwoSolution t = s;
  for (int k = 0; k < 9; ++k) {
    j[kKeys[k]] = exactmath::to_json(*slot(t, k));
  }
  return j;
}

std::vector<IdentityCheck> craig4_report(const CraigTwoSolution &s) {
  PolyRat X0 = cube(s.x0), Y0 = cube(s.y0), Z0 = cube(s.z0);
  return {
      {"x1 z1 = x0 z0", s.x1 * s.z1 == s.x0 * s.z0},
      {"x2 y2 = x0 y0", s.x2 * s.y2 == s.x0 * s.y0},
      {"x1^3 - y1^3 + z1^3 = -(x0^3 - y0^3 + z0^3)", cube(s.x1) - cube(s.y1) + cube(s.z1) == Y0 - X0 - Z0},
      {"x2^3 + y2^3 - z2^3 = -(x0^3 + y0^3 - z0^3)", cube(s.x2) + cube(s.y2) - cube(s.z2) == Z0 - X0 - Y0},
  };
}

bool craig4_check(const CraigTwoSolution &s) {
  for (const auto &c : craig4_report(s))
    if (!c.holds)
      return false;
  return true;
}

PolyRat craig4_h(const CraigTwoSolution &s) {
  PolyRat A = cube(s.x0) + cube(s.y0) - cube(s.z0);
  return A * A - PolyRat::constant(Rat(4)) * cube(s.x0) * cube(s.y0);
}

Craig4Torsion craig4_torsion_at(const CraigTwoSolution &s, const PolyRat &h, u64 p) {
  if (h.degree() % 2 == 0)
    throw PreconditionError("h must have odd degree");
  if (h != craig4_h(s))
    throw MismatchError("h differs from f(x0, y0, z0)");
  PolyFp hp = PolyFp::from_rat(h, p);
  if (hp.degree() != h.degree() || !exactmath::is_squarefree_fp(hp))
    throw PreconditionError("bad reduction at " + std::to_string(p));
  jactor::OddModelFp model = jactor::curve_from_poly(hp);
  const PolyRat A[4] = {cube(s.x0) + cube(s.y0) - cube(s.z0), cube(s.x0) - cube(s.y0) + cube(s.z0),
                        cube(s.x1) + cube(s.y1) - cube(s.z1), cube(s.y2) + cube(s.z2) - cube(s.x2)};
  Craig4Torsion out;
  out.p = p;
  out.curve = model.curve;
  const int K = std::max(h.degree(), model.curve.genus + 1);
  for (const auto &Ak : A) {
    jactor::FunctionFp G =
        jactor::transport_function(model.map, PolyFp::from_rat(Ak, p), PolyFp::constant(p, 1), K, p);
    out.divisors.push_back(jactor::divisor_of_function(model.curve, G.a, G.b, 3));
  }
  out.certificate = jactor::certify_torsion_rank(out.divisors, 3, model.curve);
  return out;
}

} // namespace classforge::constructions
