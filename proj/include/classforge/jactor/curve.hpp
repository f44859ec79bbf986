#ifndef CLASSFORGE_JACTOR_CURVE_HPP
#define CLASSFORGE_JACTOR_CURVE_HPP

#include "classforge/exactmath/poly_fp.hpp"
#include "classforge/exactmath/poly_rat.hpp"

#include <json.hpp>

#include <vector>

namespace classforge::jactor {

using exactmath::Int;
using exactmath::PolyFp;
using exactmath::PolyRat;
using exactmath::Rat;
using exactmath::u64;

/* y^2 = f(x) with deg f = 2g + 1 odd, f squarefree and monic. The base is Q
 * when p == 0 (f_q holds the model) and F_p otherwise (f_p holds it). */
struct HyperCurve {
  u64 p = 0;
  PolyRat f_q;
  PolyFp f_p;
  int genus = 0;

  bool over_q() const { return p == 0; }
  // Reduction modulo an odd prime of good reduction; throws
  // PreconditionError at bad primes.
  HyperCurve reduce(u64 prime) const;
  int degree() const { return over_q() ? f_q.degree() : f_p.degree(); }
};

/* Coordinate change from the odd model (X, Y) back to the input model:
 *   x = (alpha X + beta) / (gamma X + delta),
 *   y = lambda Y / (gamma X + delta)^(g+1). */
template <class K> struct ModelMap {
  K alpha, beta, gamma, delta, lambda;
  int genus = 0;
};
using ModelMapQ = ModelMap<Rat>;
using ModelMapFp = ModelMap<u64>;

struct OddModelQ {
  HyperCurve curve;
  ModelMapQ map;
};
struct OddModelFp {
  HyperCurve curve;
  ModelMapFp map;
};

// Odd-degree input is made monic; even-degree input has its smallest base
// field root moved to infinity (error when there is none).
OddModelQ curve_from_poly(const PolyRat &f);
OddModelFp curve_from_poly(const PolyFp &f);
HyperCurve curve_over_fp(const PolyFp &f);   // f must already be odd and monic

// x -> r + 1/u, y -> v/u^(g+1) followed by monic scaling. Requires even
// degree and f(r) = 0.
OddModelQ move_root_to_infinity(const PolyRat &f, const Rat &r);
OddModelFp move_root_to_infinity(const PolyFp &f, u64 r);

ModelMapFp reduce_map(const ModelMapQ &m, u64 p);

// A point of the input model y^2 = f(x). Points at infinity of an
// even-degree model carry at_infinity with y holding the limit of y/x^(g+1).
template <class K> struct ModelPoint {
  K x, y;
  bool at_infinity = false;
};

// Image of an input-model point on the odd model; throws PreconditionError
// for the point sent to the odd model's own point at infinity.
ModelPoint<Rat> transport_point(const ModelMapQ &m, const ModelPoint<Rat> &P);
ModelPoint<u64> transport_point(const ModelMapFp &m, const ModelPoint<u64> &P, u64 p);

// The function a(x) + b(x) y on the input model, multiplied by
// (gamma X + delta)^K so that it becomes A(X) + B(X) Y on the odd model.
// Requires K >= deg a and K >= deg b + g + 1.
struct FunctionFp {
  PolyFp a, b;
};
FunctionFp transport_function(const ModelMapFp &m, const PolyFp &a, const PolyFp &b, int K, u64 p);

// Primes dividing 2 * lc * disc of the primitive integer rescaling of f.
// Throws BudgetExceeded when the factorization is incomplete.
std::vector<Int> bad_primes(const PolyRat &f);

nlohmann::json to_json(const HyperCurve &C);
HyperCurve curve_from_json(const nlohmann::json &j);

} // namespace classforge::jactor

#endif
