#include "classforge/constructions/mestre.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/json_io.hpp"
#include "classforge/jactor/point_count.hpp"

namespace classforge::constructions {

using namespace exactmath;

namespace {

bool is_zero(const Rat &r) { return r == 0; }
bool is_zero(const RatFunc &r) { return r.is_zero(); }

// y^2 = co[3] x^3 + co[2] x^2 + co[1] x + co[0]
template <class F> EllPoint<F> add(const std::array<F, 4> &co, const EllPoint<F> &P, const EllPoint<F> &Q) {
  if (P.infinity)
    return Q;
  if (Q.infinity)
    return P;
  F lambda;
  if (P.x == Q.x) {
    if (is_zero(P.y + Q.y))
      return {F(), F(), true};
    lambda = (F(Rat(3)) * co[3] * P.x * P.x + F(Rat(2)) * co[2] * P.x + co[1]) / (F(Rat(2)) * P.y);
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
  }
  F x3 = (lambda * lambda - co[2]) / co[3] - P.x - Q.x;
  F y3 = -(P.y + lambda * (x3 - P.x));
  return {x3, y3, false};
}

template <class F> EllPoint<F> mul(const std::array<F, 4> &co, long n, EllPoint<F> P) {
  if (n < 0) {
    n = -n;
    P.y = -P.y;
  }
  EllPoint<F> R{F(), F(), true};
  while (n) {
    if (n & 1)
      R = add(co, R, P);
    P = add(co, P, P);
    n >>= 1;
  }
  return R;
}

template <class F> bool order_ten(const std::array<F, 4> &co, const EllPoint<F> &P) {
  if (P.infinity)
    return false;
  EllPoint<F> P2 = add(co, P, P), P4 = add(co, P2, P2), P5 = add(co, P4, P);
  EllPoint<F> P10 = add(co, P5, P5);
  return !P2.infinity && !P5.infinity && P10.infinity;
}

template <class F> F k_of(const F &u) { return u * (u * u + u - F(Rat(1))); }

template <class F> F c_of(const F &u) {
  F u2 = u * u;
  return (u2 + F(Rat(1))) * (u2 * u2 - F(Rat(2)) * u2 * u - F(Rat(6)) * u2 + F(Rat(2)) * u + F(Rat(1)));
}

// g_u = 8u^2 x^3 + c x^2 - 8u^2 k x - k c
template <class F> std::array<F, 4> kubert_coeffs(const F &u) {
  F k = k_of(u), c = c_of(u), e = F(Rat(8)) * u * u;
  return {-k * c, -e * k, c, e};
}

template <class F> EllPoint<F> kubert_point(const F &u) {
  F one(Rat(1)), two(Rat(2));
  F x = (one + F(Rat(3)) * u - u * u - u * u * u) / (two * u);
  F y = (one - u) * (one + u) * (one + u) * (one + u) * (one + F(Rat(4)) * u - u * u) / (two * u);
  return {x, y, false};
}

std::array<Rat, 4> coeffs_of(const PolyRat &g) { return {g.coeff(0), g.coeff(1), g.coeff(2), g.coeff(3)}; }

RatFunc eval_poly(const PolyRat &f, const RatFunc &x) {
  RatFunc acc;
  for (int i = f.degree(); i >= 0; --i)
    acc = acc * x + RatFunc(f.coeff(i));
  return acc;
}

} // namespace

Rat kubert_k(const Rat &u) { return k_of(u); }

PolyRat kubert_h(const Rat &u) { return PolyRat{c_of(u), 8 * u * u}; }

PolyRat kubert_g(const Rat &u) { return PolyRat{-kubert_k(u), Rat(0), Rat(1)} * kubert_h(u); }

KubertCurve kubert_curve(const Rat &u) {
  if (u == 0)
    throw PreconditionError("u = 0: the point of order 10 is undefined");
  PolyRat g = kubert_g(u);
  if (g.degree() != 3 || !is_squarefree(g))
    throw PreconditionError("g_u is singular at u = " + u.get_str());
  return {u, g, kubert_point(u)};
}

EllPoint<Rat> ell_add(const PolyRat &g, const EllPoint<Rat> &P, const EllPoint<Rat> &Q) {
  return add(coeffs_of(g), P, Q);
}

EllPoint<Rat> ell_mul(const PolyRat &g, long n, const EllPoint<Rat> &P) { return mul(coeffs_of(g), n, P); }

bool verify_order_ten(const Rat &u) {
  KubertCurve E = kubert_curve(u);
  if (E.P.y * E.P.y != E.g.eval(E.P.x))
    return false;
  return order_ten(coeffs_of(E.g), E.P);
}

bool kubert_generic_check() {
  RatFunc u = RatFunc::var();
  auto co = kubert_coeffs(u);
  auto P = kubert_point(u);
  RatFunc rhs = ((co[3] * P.x + co[2]) * P.x + co[1]) * P.x + co[0];
  if (!(P.y * P.y == rhs))
    return false;
  // The factored and expanded forms of g_u agree.
  RatFunc k = k_of(u);
  RatFunc hx = RatFunc(Rat(8)) * u * u * P.x + c_of(u);
  if (!((P.x * P.x - k) * hx == rhs))
    return false;
  return order_ten(co, P);
}

MestreTriple mestre_triple(const Rat &t) {
  Rat q = t * t + t + 1;
  MestreTriple out;
  out.u1 = (t * t + t - 1) / q;
  out.u2 = -(t * t + 3 * t + 1) / q;
  out.u3 = -(t * t - t - 1) / q;
  out.common = kubert_k(out.u1);
  return out;
}

bool mestre_invariance_check() {
  RatFunc t = RatFunc::var(), one(Rat(1));
  RatFunc q = t * t + t + one;
  RatFunc u1 = (t * t + t - one) / q;
  RatFunc u2 = -(t * t + RatFunc(Rat(3)) * t + one) / q;
  RatFunc u3 = -(t * t - t - one) / q;
  return k_of(u1) == k_of(u2) && k_of(u2) == k_of(u3);
}

MestreModel mestre_model(const Rat &t) {
  MestreModel M;
  M.t = t;
  M.u = mestre_triple(t);
  const Rat &u1 = M.u.u1, &u2 = M.u.u2, &u3 = M.u.u3;
  for (const Rat &u : {u1, u2, u3}) {
    if (u == 0 || kubert_k(u) == 0)
      throw PreconditionError("degenerate t = " + t.get_str() + ": some u_i or k vanishes");
    kubert_curve(u);
  }
  Rat t2 = t * t, t3 = t2 * t;
  PolyRat Nv{-1 - t + 3 * t2 + 2 * t3, -2 - 4 * t + 4 * t2 + 2 * t3, 1 - 2 * t + t3};
  PolyRat Dv{1 + 5 * t + 7 * t2 + 2 * t3, -2 - 2 * t + 6 * t2 + 4 * t3, -1 - 2 * t + 2 * t2 + t3};
  PolyRat Dw = (t2 - t - 1) * PolyRat{-1 - 2 * t, Rat(0), t - 1};
  if (Dv.is_zero() || Dw.is_zero() || Nv.is_zero())
    throw PreconditionError("degenerate t = " + t.get_str() + ": parametrization collapses");
  M.v = RatFunc(Nv, Dv);
  M.w = -RatFunc(Nv, Dw);
  RatFunc v2 = M.v * M.v, w2 = M.w * M.w;
  RatFunc den = RatFunc(Rat(8)) * (RatFunc(u2 * u2) * v2 - RatFunc(u1 * u1));
  if (den.is_zero())
    throw PreconditionError("degenerate t = " + t.get_str());
  M.x = (RatFunc(c_of(u1)) - RatFunc(c_of(u2)) * v2) / den;
  RatFunc h1 = eval_poly(kubert_h(u1), M.x);
  M.parametrization_holds =
      h1 == v2 * eval_poly(kubert_h(u2), M.x) && h1 == w2 * eval_poly(kubert_h(u3), M.x);
  RatFunc g1 = eval_poly(kubert_g(u1), M.x);
  M.H = odd_part(g1.num() * g1.den()).primitive_part();
  int d = M.H.degree();
  M.genus = d >= 3 ? (d - 1) / 2 : 0;
  M.rational_roots = rational_roots(M.H);
  return M;
}

MestreReport mestre_check(const Rat &t, const std::vector<u64> &primes, double direct_limit) {
  MestreReport R;
  R.model = mestre_model(t);
  const MestreModel &M = R.model;
  R.genus_five = M.genus == 5;
  R.three_rational_roots = M.rational_roots.size() >= 3;
  jactor::HyperCurve CQ = jactor::curve_from_poly(M.H).curve;
  std::array<jactor::HyperCurve, 3> EQ;
  const std::array<Rat, 3> us{M.u.u1, M.u.u2, M.u.u3};
  for (int i = 0; i < 3; ++i)
    EQ[i] = jactor::curve_from_poly(kubert_g(us[i])).curve;
  PolyRat j2 = PolyRat{-M.u.common, Rat(0), Rat(1)} * kubert_h(us[0]) * kubert_h(us[1]) * kubert_h(us[2]);
  jactor::HyperCurve J2Q = jactor::curve_from_poly(j2).curve;
  R.all_divisible = true;
  for (u64 p : primes) {
    MestrePrime mp;
    mp.p = p;
    jactor::HyperCurve C;
    try {
      C = CQ.reduce(p);
    } catch (const PreconditionError &e) {
      mp.note = e.what();
      R.primes.push_back(mp);
      continue;
    }
    mp.good = true;
    if (static_cast<double>(p) * p * p * p * p <= direct_limit)
      mp.direct_order = jactor::jacobian_order(C);
    try {
      Int prod = 1;
      for (int i = 0; i < 3; ++i) {
        mp.elliptic_orders[i] = jactor::jacobian_order(EQ[i].reduce(p));
        prod *= mp.elliptic_orders[i];
      }
      mp.genus2_order = jactor::jacobian_order(J2Q.reduce(p));
      mp.jacobian_order = prod * mp.genus2_order;
      if (mp.direct_order && *mp.direct_order != mp.jacobian_order)
        throw Error("direct and split Jacobian orders disagree at p = " + std::to_string(p));
    } catch (const PreconditionError &e) {
      if (!mp.direct_order) {
        mp.note = std::string("factor curve has bad reduction and p^5 exceeds the direct limit: ") + e.what();
        R.all_divisible = false;
        R.primes.push_back(mp);
        continue;
      }
      mp.jacobian_order = *mp.direct_order;
      mp.note = "factor curve has bad reduction; direct count used";
    }
    mp.divisible = mpz_divisible_ui_p(mp.jacobian_order.get_mpz_t(), 1000);
    R.all_divisible = R.all_divisible && mp.divisible;
    R.primes.push_back(mp);
  }
  return R;
}

nlohmann::json to_json(const MestreReport &r) {
  nlohmann::json j;
  j["t"] = exactmath::to_json(r.model.t);
  j["u"] = {exactmath::to_json(r.model.u.u1), exactmath::to_json(r.model.u.u2), exactmath::to_json(r.model.u.u3)};
  j["common"] = exactmath::to_json(r.model.u.common);
  j["parametrization_holds"] = r.model.parametrization_holds;
  j["H"] = exactmath::to_json(r.model.H);
  j["genus"] = r.model.genus;
  j["rational_roots"] = nlohmann::json::array();
  for (const auto &x : r.model.rational_roots)
    j["rational_roots"].push_back(exactmath::to_json(x));
  j["primes"] = nlohmann::json::array();
  for (const auto &mp : r.primes) {
    nlohmann::json e{{"p", mp.p}, {"good", mp.good}};
    if (mp.good) {
      e["jacobian_order"] = exactmath::to_json(mp.jacobian_order);
      e["divisible_by_1000"] = mp.divisible;
      if (mp.direct_order)
        e["direct_order"] = exactmath::to_json(*mp.direct_order);
    }
    if (!mp.note.empty())
      e["note"] = mp.note;
    j["primes"].push_back(e);
  }
  j["genus_five"] = r.genus_five;
  j["three_rational_roots"] = r.three_rational_roots;
  j["all_divisible"] = r.all_divisible;
  j["evidence"] = r.evidence;
  return j;
}

} // namespace classforge::constructions
