#include "classforge/jactor/curve.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/exactmath/json_io.hpp"

namespace classforge::jactor {

using namespace exactmath;

namespace {

int genus_of(int degree) {
  if (degree < 3 || degree % 2 == 0)
    throw PreconditionError("odd model needs odd degree >= 3");
  return (degree - 1) / 2;
}

// c^g y'^2 scaling: returns c^(2g) f(X/c), monic when f has lead c.
PolyRat monic_scale(const PolyRat &f, const Rat &c, int g) {
  std::vector<Rat> out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f.coeff(i) * rpow(c, 2 * g - static_cast<long>(i));
  return PolyRat(out);
}

PolyFp monic_scale(const PolyFp &f, u64 c, int g) {
  u64 p = f.modulus();
  u64 ci = fp::inv(c, p);
  std::vector<u64> out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    long e = 2 * g - static_cast<long>(i);
    u64 s = e >= 0 ? fp::pow(c, e, p) : fp::pow(ci, -e, p);
    out[i] = fp::mul(f.coeff(i), s, p);
  }
  return PolyFp(p, out);
}

} // namespace

HyperCurve HyperCurve::reduce(u64 prime) const {
  if (!over_q())
    throw PreconditionError("curve is already over a finite field");
  if (prime % 2 == 0 || !is_probable_prime(from_u64(prime)))
    throw PreconditionError("reduction needs an odd prime");
  for (const auto &c : f_q.coeffs())
    if (mpz_divisible_ui_p(c.get_den_mpz_t(), prime))
      throw PreconditionError("bad reduction at " + std::to_string(prime) + ": non-integral coefficient");
  PolyFp g = PolyFp::from_rat(f_q, prime);
  if (g.degree() != f_q.degree() || !is_squarefree_fp(g))
    throw PreconditionError("bad reduction at " + std::to_string(prime));
  HyperCurve C;
  C.p = prime;
  C.f_p = g;
  C.genus = genus;
  return C;
}

HyperCurve curve_over_fp(const PolyFp &f) {
  HyperCurve C;
  C.p = f.modulus();
  if (C.p % 2 == 0)
    throw PreconditionError("characteristic 2 is not supported");
  C.genus = genus_of(f.degree());
  if (f.lead() != 1)
    throw PreconditionError("odd model must be monic");
  if (!is_squarefree_fp(f))
    throw PreconditionError("f is not squarefree");
  C.f_p = f;
  return C;
}

OddModelQ move_root_to_infinity(const PolyRat &f, const Rat &r) {
  if (f.degree() % 2 != 0 || f.degree() < 4)
    throw PreconditionError("moving a root to infinity needs even degree >= 4");
  if (f.eval(r) != 0)
    throw PreconditionError("r is not a root of f");
  if (!is_squarefree(f))
    throw PreconditionError("f is not squarefree");
  int g = (f.degree() - 2) / 2;
  PolyRat shifted = f.compose(PolyRat{r, 1});
  PolyRat F = shifted.reversed(f.degree());
  Rat c = F.lead();
  OddModelQ out;
  out.curve.f_q = monic_scale(F, c, g);
  out.curve.genus = g;
  out.map = {r, c, Rat(1), Rat(0), c, g};
  return out;
}

OddModelFp move_root_to_infinity(const PolyFp &f, u64 r) {
  u64 p = f.modulus();
  if (f.degree() % 2 != 0 || f.degree() < 4)
    throw PreconditionError("moving a root to infinity needs even degree >= 4");
  if (f.eval(r) != 0)
    throw PreconditionError("r is not a root of f");
  if (!is_squarefree_fp(f))
    throw PreconditionError("f is not squarefree");
  int g = (f.degree() - 2) / 2;
  PolyFp shifted = f.compose(PolyFp(p, {r, 1}));
  std::vector<u64> rev(f.degree() + 1, 0);
  for (int i = 0; i <= f.degree(); ++i)
    rev[f.degree() - i] = shifted.coeff(i);
  PolyFp F(p, rev);
  u64 c = F.lead();
  OddModelFp out;
  out.curve = curve_over_fp(monic_scale(F, c, g));
  out.map = {r, c, 1, 0, c, g};
  return out;
}

OddModelQ curve_from_poly(const PolyRat &f) {
  if (f.degree() % 2 == 0) {
    auto roots = rational_roots(f);
    if (roots.empty())
      throw PreconditionError("even-degree model has no rational root to move to infinity");
    return move_root_to_infinity(f, roots.front());
  }
  int g = genus_of(f.degree());
  if (!is_squarefree(f))
    throw PreconditionError("f is not squarefree");
  Rat c = f.lead();
  OddModelQ out;
  out.curve.f_q = monic_scale(f, c, g);
  out.curve.genus = g;
  out.map = {Rat(1), Rat(0), Rat(0), c, c, g};
  return out;
}

OddModelFp curve_from_poly(const PolyFp &f) {
  if (f.degree() % 2 == 0) {
    auto roots = roots_fp(f);
    if (roots.empty())
      throw PreconditionError("even-degree model has no root in F_p to move to infinity");
    return move_root_to_infinity(f, roots.front());
  }
  int g = genus_of(f.degree());
  u64 c = f.lead();
  OddModelFp out;
  out.curve = curve_over_fp(monic_scale(f, c, g));
  out.map = {1, 0, 0, c, c, g};
  return out;
}

ModelMapFp reduce_map(const ModelMapQ &m, u64 p) {
  return {fp::from_rat(m.alpha, p), fp::from_rat(m.beta, p), fp::from_rat(m.gamma, p),
          fp::from_rat(m.delta, p), fp::from_rat(m.lambda, p), m.genus};
}

ModelPoint<Rat> transport_point(const ModelMapQ &m, const ModelPoint<Rat> &P) {
  const int e = m.genus + 1;
  if (P.at_infinity) {
    if (m.gamma == 0)
      throw PreconditionError("point at infinity of an odd model stays at infinity");
    Rat det = m.alpha * m.delta - m.beta * m.gamma;
    Rat X = -m.delta / m.gamma;
    Rat Y = P.y * rpow(det, e) / (rpow(-m.gamma, e) * m.lambda);
    return {X, Y, false};
  }
  Rat den = m.alpha - m.gamma * P.x;
  if (den == 0)
    throw PreconditionError("point maps to infinity on the odd model");
  Rat X = (m.delta * P.x - m.beta) / den;
  Rat Y = P.y * rpow(m.gamma * X + m.delta, e) / m.lambda;
  return {X, Y, false};
}

ModelPoint<u64> transport_point(const ModelMapFp &m, const ModelPoint<u64> &P, u64 p) {
  const u64 e = m.genus + 1;
  if (P.at_infinity) {
    if (m.gamma == 0)
      throw PreconditionError("point at infinity of an odd model stays at infinity");
    u64 det = fp::sub(fp::mul(m.alpha, m.delta, p), fp::mul(m.beta, m.gamma, p), p);
    u64 X = fp::mul(fp::neg(m.delta, p), fp::inv(m.gamma, p), p);
    u64 den = fp::mul(fp::pow(fp::neg(m.gamma, p), e, p), m.lambda, p);
    u64 Y = fp::mul(fp::mul(P.y, fp::pow(det, e, p), p), fp::inv(den, p), p);
    return {X, Y, false};
  }
  u64 den = fp::sub(m.alpha, fp::mul(m.gamma, P.x, p), p);
  if (den == 0)
    throw PreconditionError("point maps to infinity on the odd model");
  u64 X = fp::mul(fp::sub(fp::mul(m.delta, P.x, p), m.beta, p), fp::inv(den, p), p);
  u64 L = fp::add(fp::mul(m.gamma, X, p), m.delta, p);
  u64 Y = fp::mul(fp::mul(P.y, fp::pow(L, e, p), p), fp::inv(m.lambda, p), p);
  return {X, Y, false};
}

FunctionFp transport_function(const ModelMapFp &m, const PolyFp &a, const PolyFp &b, int K, u64 p) {
  const int e = m.genus + 1;
  if (K < a.degree() || K < b.degree() + e)
    throw PreconditionError("clearing exponent too small for the function's degree");
  PolyFp num(p, {m.beta, m.alpha});
  PolyFp L(p, {m.delta, m.gamma});
  std::vector<PolyFp> num_pow{PolyFp::constant(p, 1)}, L_pow{PolyFp::constant(p, 1)};
  for (int i = 1; i <= K; ++i) {
    num_pow.push_back(num_pow.back() * num);
    L_pow.push_back(L_pow.back() * L);
  }
  FunctionFp out{PolyFp(p), PolyFp(p)};
  for (int i = 0; i <= a.degree(); ++i)
    out.a += (num_pow[i] * L_pow[K - i]).scaled(a.coeff(i));
  for (int i = 0; i <= b.degree(); ++i)
    out.b += (num_pow[i] * L_pow[K - i - e]).scaled(fp::mul(b.coeff(i), m.lambda, p));
  return out;
}

std::vector<Int> bad_primes(const PolyRat &f) {
  PolyRat g = f.primitive_part();
  Int lc = g.lead().get_num();
  Int disc = discriminant(g).get_num();
  IntFactorization fac = factor_int(2 * lc * disc);
  if (!fac.complete)
    throw BudgetExceeded("factorization of 2 * lc * disc incomplete; cofactor " + to_string(fac.cofactor));
  std::vector<Int> out;
  for (const auto &[q, e] : fac.factors)
    out.push_back(q);
  return out;
}

nlohmann::json to_json(const HyperCurve &C) {
  nlohmann::json j;
  if (C.over_q()) {
    j["base"] = "Q";
    j["f"] = exactmath::to_json(C.f_q);
  } else {
    j["base"] = C.p;
    j["f"] = exactmath::to_json(C.f_p);
  }
  return j;
}

HyperCurve curve_from_json(const nlohmann::json &j) {
  const auto &base = j.at("base");
  if (base.is_string() && base.get<std::string>() == "Q")
    return curve_from_poly(poly_from_json(j.at("f"))).curve;
  u64 p = base.is_string() ? std::stoull(base.get<std::string>()) : base.get<u64>();
  return curve_from_poly(polyfp_from_json(j.at("f"), p)).curve;
}

} // namespace classforge::jactor
