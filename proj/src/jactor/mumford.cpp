#include "classforge/jactor/mumford.hpp"

#include "classforge/error.hpp"

#include <cmath>

namespace classforge::jactor {

using namespace exactmath;

namespace {

void require_fp(const HyperCurve &C) {
  if (C.over_q())
    throw PreconditionError("Jacobian arithmetic needs a curve over F_p");
}

void require_valid(const MumfordDivisor &D, const HyperCurve &C) {
  if (D.u.modulus() != C.p || (!D.v.is_zero() && D.v.modulus() != C.p))
    throw MismatchError("divisor and curve live over different fields");
  if (!is_semi_reduced(D, C))
    throw PreconditionError("invalid Mumford pair " + D.to_string());
}

} // namespace

std::string MumfordDivisor::to_string() const { return "(" + u.to_string() + ", " + v.to_string() + ")"; }

MumfordDivisor identity_divisor(const HyperCurve &C) {
  require_fp(C);
  return {PolyFp::constant(C.p, 1), PolyFp(C.p)};
}

bool is_semi_reduced(const MumfordDivisor &D, const HyperCurve &C) {
  if (D.u.is_zero() || D.u.lead() != 1)
    return false;
  if (D.v.degree() >= D.u.degree())
    return false;
  return ((D.v * D.v - C.f_p) % D.u).is_zero();
}

bool is_reduced(const MumfordDivisor &D, const HyperCurve &C) {
  return is_semi_reduced(D, C) && D.u.degree() <= C.genus;
}

MumfordDivisor point_divisor(const HyperCurve &C, u64 x, u64 y) {
  require_fp(C);
  const u64 p = C.p;
  if (fp::mul(y, y, p) != C.f_p.eval(x))
    throw PreconditionError("point is not on the curve");
  return {PolyFp(p, {fp::neg(x, p), 1}), PolyFp::constant(p, y)};
}

MumfordDivisor negate(const MumfordDivisor &D, const HyperCurve &C) {
  require_valid(D, C);
  return {D.u, -D.v};
}

MumfordDivisor reduce_divisor(MumfordDivisor D, const HyperCurve &C) {
  require_fp(C);
  while (D.u.degree() > C.genus) {
    PolyFp u2 = (C.f_p - D.v * D.v) / D.u;
    D.v = (-D.v) % u2;
    D.u = u2.monic();
  }
  D.v = D.v % D.u;
  return D;
}

MumfordDivisor cantor_add(const MumfordDivisor &D1, const MumfordDivisor &D2, const HyperCurve &C) {
  require_fp(C);
  require_valid(D1, C);
  require_valid(D2, C);
  XgcdFp g1 = poly_xgcd(D1.u, D2.u);   // d1 = e1 u1 + e2 u2
  XgcdFp g2 = poly_xgcd(g1.d, D1.v + D2.v);
  const PolyFp &d = g2.d;
  PolyFp s1 = g2.s * g1.s, s2 = g2.s * g1.t, s3 = g2.t;
  PolyFp u = (D1.u * D2.u) / (d * d);
  PolyFp v = (s1 * D1.u * D2.v + s2 * D2.u * D1.v + s3 * (D1.v * D2.v + C.f_p)) / d;
  return reduce_divisor({u.monic(), v % u}, C);
}

MumfordDivisor scalar_mul(const Int &n, const MumfordDivisor &D, const HyperCurve &C) {
  MumfordDivisor base = n < 0 ? negate(D, C) : D;
  Int k = abs(n);
  MumfordDivisor acc = identity_divisor(C);
  for (long bit = static_cast<long>(mpz_sizeinbase(k.get_mpz_t(), 2)) - 1; bit >= 0 && k != 0; --bit) {
    acc = cantor_add(acc, acc, C);
    if (mpz_tstbit(k.get_mpz_t(), bit))
      acc = cantor_add(acc, base, C);
  }
  return acc;
}

std::vector<MumfordDivisor> all_reduced_divisors(const HyperCurve &C, u64 max_count) {
  require_fp(C);
  const u64 p = C.p;
  const int g = C.genus;
  if (std::pow(static_cast<double>(p), 2.0 * g) > static_cast<double>(max_count))
    throw BudgetExceeded("brute-force divisor enumeration too large");
  std::vector<MumfordDivisor> out{identity_divisor(C)};
  for (int d = 1; d <= g; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i)
      count *= p;
    for (u64 iu = 0; iu < count; ++iu) {
      std::vector<u64> uc(d + 1, 1);
      for (u64 t = iu, i = 0; i < static_cast<u64>(d); ++i, t /= p)
        uc[i] = t % p;
      PolyFp u(p, uc);
      PolyFp target = C.f_p % u;
      for (u64 iv = 0; iv < count; ++iv) {
        std::vector<u64> vc(d);
        for (u64 t = iv, i = 0; i < static_cast<u64>(d); ++i, t /= p)
          vc[i] = t % p;
        PolyFp v(p, vc);
        if ((v * v) % u == target)
          out.push_back({u, v});
      }
    }
  }
  return out;
}

} // namespace classforge::jactor
