#include "classforge/constructions/ri.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/jactor/mumford.hpp"

namespace classforge::constructions {

using namespace exactmath;

Rat ri_slice_c(const Rat &a, const Rat &b) {
  Rat e = a - b;
  return (2 * (a + b) + 1 + e * e) / 4;
}

RiCurve ri_curve(unsigned long m, const Rat &a, const Rat &b, const Rat &c) {
  if (m < 2)
    throw PreconditionError("m must be at least 2");
  if (a == b || a == c || b == c)
    throw PreconditionError("a, b, c must be distinct");
  RiCurve C;
  C.m = m;
  C.a = a;
  C.b = b;
  C.c = c;
  C.d = 2 * (a + b) - 4 * c;
  C.e = a - b;
  if (C.d * C.d == 4 * C.e * C.e)
    throw PreconditionError("d^2 = 4e^2");
  if (C.d != -1 - C.e * C.e)
    throw PreconditionError("(a, b, c) is off the slice d = -1 - e^2; no rational Weierstrass point at X = 1");
  std::vector<Rat> f(2 * m + 1);
  f[0] = C.e * C.e;
  f[m] = C.d;
  f[2 * m] = 1;
  C.even_model = PolyRat(f);
  C.odd = jactor::move_root_to_infinity(C.even_model, Rat(1));
  C.P1 = {Rat(0), C.e, false};
  C.P0 = {Rat(0), Rat(1), true};
  C.P2 = {Rat(0), Rat(-1), true};
  return C;
}

RiTorsion ri_torsion_at(const RiCurve &C, u64 p) {
  if (C.m % p == 0)
    throw PreconditionError("p divides m");
  RiTorsion out;
  out.p = p;
  out.curve = C.odd.curve.reduce(p);
  jactor::ModelMapFp map = jactor::reduce_map(C.odd.map, p);
  auto on_odd = [&](const jactor::ModelPoint<Rat> &P) {
    jactor::ModelPoint<u64> Pp{P.at_infinity ? 0 : fp::from_rat(P.x, p), fp::from_rat(P.y, p), P.at_infinity};
    auto Q = jactor::transport_point(map, Pp, p);
    return jactor::point_divisor(out.curve, Q.x, Q.y);
  };
  jactor::MumfordDivisor minus_P0 = jactor::negate(on_odd(C.P0), out.curve);
  out.divisors.push_back(jactor::cantor_add(on_odd(C.P1), minus_P0, out.curve));
  out.divisors.push_back(jactor::cantor_add(on_odd(C.P2), minus_P0, out.curve));
  out.certificate = jactor::certify_torsion_rank(out.divisors, C.m, out.curve);
  return out;
}

std::vector<RiTorsion> ri_torsion_certificates(const RiCurve &C, int count, u64 start) {
  std::vector<RiTorsion> out;
  for (u64 p = std::max<u64>(start, 3); static_cast<int>(out.size()) < count; ++p) {
    if (!is_probable_prime(from_u64(p)))
      continue;
    try {
      out.push_back(ri_torsion_at(C, p));
    } catch (const PreconditionError &) {
    }
    if (p > 100000)
      throw BudgetExceeded("no good primes below 100000");
  }
  return out;
}

Int ri_class_radicand(unsigned long m, const Int &X, const Int &Z) {
  Int e = ipow(2, m) - 1;
  Int d = -2 - ipow(2, m + 1);
  Int Xm = ipow(X, m), Zm = ipow(Z, m);
  return Xm * Xm + d * Xm * Zm + e * e * Zm * Zm;
}

SpecializationResult ri_class_point(unsigned long m, const Int &X, const Int &Z) {
  if (m < 2)
    throw PreconditionError("m must be at least 2");
  Int e = ipow(2, m) - 1;
  Int Xm = ipow(X, m), Zm = ipow(Z, m);
  if (gcd(X, Z) != 1 || X == 0 || Z == 0) {
    SpecializationResult r;
    r.point = {X, Z};
    r.target_rank = 2;
    r.outcome = Outcome::exceptional;
    r.note = "X, Z must be nonzero and coprime";
    return r;
  }
  int target = ri_class_radicand(m, X, Z) < 0 ? 2 : 1;
  return certify_splittings({X, Z}, {{X * Z, Xm - e * Zm}, {2 * X * Z, Xm + e * Zm}}, m, target);
}

std::vector<std::array<Int, 2>> ri_class_points(unsigned long m, long N) {
  std::vector<std::array<Int, 2>> out;
  for (long z = 1; z < N; ++z)
    for (long x = -N + 1; x < N; ++x) {
      Int X(x), Z(z);
      if ((x + z) % 2 == 0 || gcd(X, Z) != 1 || x == 0)
        continue;
      if (ri_class_radicand(m, X, Z) < 0)
        out.push_back({X, Z});
    }
  return out;
}

} // namespace classforge::constructions
