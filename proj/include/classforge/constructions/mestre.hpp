#ifndef CLASSFORGE_CONSTRUCTIONS_MESTRE_HPP
#define CLASSFORGE_CONSTRUCTIONS_MESTRE_HPP

#include "classforge/constructions/specialization.hpp"
#include "classforge/exactmath/rat_func.hpp"
#include "classforge/jactor/curve.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <vector>

namespace classforge::constructions {

using exactmath::RatFunc;

// Affine point on y^2 = a x^3 + b x^2 + c x + d, or the point at infinity.
template <class F> struct EllPoint {
  F x, y;
  bool infinity = false;
};

// Kubert's curve with a rational point of order 10:
// y^2 = g_u(x) = (x^2 - k(u)) h_u(x), k(u) = u(u^2 + u - 1),
// h_u(x) = 8 u^2 x + (u^2 + 1)(u^4 - 2u^3 - 6u^2 + 2u + 1).
Rat kubert_k(const Rat &u);
PolyRat kubert_h(const Rat &u);
PolyRat kubert_g(const Rat &u);

struct KubertCurve {
  Rat u;
  PolyRat g;
  EllPoint<Rat> P;
};
// Throws PreconditionError for u = 0 or when g_u is not squarefree.
KubertCurve kubert_curve(const Rat &u);
EllPoint<Rat> ell_add(const PolyRat &g, const EllPoint<Rat> &P, const EllPoint<Rat> &Q);
EllPoint<Rat> ell_mul(const PolyRat &g, long n, const EllPoint<Rat> &P);
// 10 P = 0 and k P != 0 for k in {1, 2, 5}.
bool verify_order_ten(const Rat &u);
// The same check over Q(u): P lies on y^2 = g_u(x) and has exact order 10.
bool kubert_generic_check();

struct MestreTriple {
  Rat u1, u2, u3;
  Rat common;   // u (u^2 + u - 1), equal for all three
};
MestreTriple mestre_triple(const Rat &t);
// u_1 (u_1^2 + u_1 - 1) = u_2 (...) = u_3 (...) in Q(t).
bool mestre_invariance_check();

struct MestreModel {
  Rat t;
  MestreTriple u;
  RatFunc v, w, x;         // parametrization of the quotient curve in z
  bool parametrization_holds = false;   // h_{u1}(x) = v^2 h_{u2}(x) = w^2 h_{u3}(x)
  PolyRat H;               // odd part of g_{u1}(x(z)) after clearing squares
  int genus = 0;
  std::vector<Rat> rational_roots;
};
// Throws PreconditionError for degenerate t (a u_i or k zero, singular g_{u_i}).
MestreModel mestre_model(const Rat &t);

struct MestrePrime {
  u64 p = 0;
  bool good = false;
  std::string note;
  std::array<Int, 3> elliptic_orders;   // |E_i(F_p)|
  Int genus2_order;                     // |J2(F_p)|, J2: y^2 = (x^2 - k) h1 h2 h3
  Int jacobian_order;                   // product of the above
  std::optional<Int> direct_order;      // from point counts on H when affordable
  bool divisible = false;               // 1000 | jacobian_order
};

struct MestreReport {
  MestreModel model;
  std::vector<MestrePrime> primes;
  bool genus_five = false;
  bool three_rational_roots = false;
  bool all_divisible = false;
  std::string evidence = "evidence-grade: identities, order-10 points and 1000 | #Jac(F_p); "
                         "pullback divisors not constructed";
};
// |Jac C(F_p)| is computed as |E1| |E2| |E3| |J2| (the Jacobian splits up to
// isogeny) and, when p^5 <= direct_limit, also by point counts on H.
MestreReport mestre_check(const Rat &t, const std::vector<u64> &primes, double direct_limit = 2e6);

nlohmann::json to_json(const MestreReport &r);

} // namespace classforge::constructions

#endif
