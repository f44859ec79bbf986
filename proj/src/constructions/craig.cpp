#include "classforge/constructions/craig.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"

#include <algorithm>

namespace classforge::constructions {

using namespace exactmath;

namespace {

using TriPoly = SparsePoly<3>;

BiPolyRat st_monomial(long c, unsigned i, unsigned j) { return BiPolyRat::term(Rat(c), {i, j}); }

TriPoly cubic_ternary() {
  TriPoly x3 = TriPoly::var(0).pow(3), y3 = TriPoly::var(1).pow(3), z3 = TriPoly::var(2).pow(3);
  return x3 * x3 + y3 * y3 + z3 * z3 - Rat(2) * (x3 * y3) - Rat(2) * (x3 * z3) - Rat(2) * (y3 * z3);
}

BiPolyRat cube(const BiPolyRat &p) { return p.pow(3); }

PolyRat at_s_one(const BiPolyRat &p) { return p.restrict_to(1, {Rat(1), Rat(0)}); }

} // namespace

BiPolyRat craig_F() {
  BiPolyRat F;
  F += st_monomial(1, 0, 24);
  F += st_monomial(-54, 3, 21);
  F += st_monomial(1701, 6, 18);
  F += st_monomial(-32076, 9, 15);
  F += st_monomial(393660, 12, 12);
  F += st_monomial(-3464208, 15, 9);
  F += st_monomial(19840464, 18, 6);
  F += st_monomial(-68024448, 21, 3);
  F += st_monomial(136048896, 24, 0);
  return F;
}

CraigParametrization craig_parametrization() {
  BiPolyRat s = BiPolyRat::var(0), t = BiPolyRat::var(1);
  CraigParametrization P;
  P.x = Rat(18) * s.pow(4);
  P.y = Rat(3) * s * (t.pow(3) - Rat(6) * s.pow(3));
  P.z = t.pow(4);
  P.w = t * (Rat(18) * s.pow(3) - t.pow(3));
  return P;
}

std::vector<IdentityCheck> craig_identity_report() {
  std::vector<IdentityCheck> out;
  TriPoly f = cubic_ternary();
  TriPoly x3 = TriPoly::var(0).pow(3), y3 = TriPoly::var(1).pow(3), z3 = TriPoly::var(2).pow(3);
  out.push_back({"f = (x^3+y^3-z^3)^2 - 4x^3y^3", f == (x3 + y3 - z3).pow(2) - Rat(4) * x3 * y3});
  out.push_back({"f = (x^3-y^3+z^3)^2 - 4x^3z^3", f == (x3 - y3 + z3).pow(2) - Rat(4) * x3 * z3});
  out.push_back({"f = (-x^3+y^3+z^3)^2 - 4y^3z^3", f == (y3 + z3 - x3).pow(2) - Rat(4) * y3 * z3});

  CraigParametrization P = craig_parametrization();
  BiPolyRat F = f.substitute<2>({P.x, P.y, P.z});
  out.push_back({"F(s,t) = f(x(s,t), y(s,t), z(s,t))", F == craig_F()});
  BiPolyRat X3 = cube(P.x), Y3 = cube(P.y), Z3 = cube(P.z), W3 = cube(P.w);
  out.push_back({"2(x^3+y^3) = z^3+w^3", Rat(2) * (X3 + Y3) == Z3 + W3});
  out.push_back({"F = (x^3-y^3+w^3)^2 - 4x^3w^3", F == (X3 - Y3 + W3).pow(2) - Rat(4) * X3 * W3});
  return out;
}

bool craig_identity_check() {
  for (const auto &c : craig_identity_report())
    if (!c.holds)
      return false;
  return true;
}

Int craig_F_value(const Int &s, const Int &t) { return craig_F().eval({Rat(s), Rat(t)}).get_num(); }

bool craig_T(const Int &s, const Int &t) {
  if (gcd(3 * s, t) != 1 || mod(s, 2) != 0)
    return false;
  for (int i = 0; i < 3; ++i)
    if (mod(s + ipow(2, i) * t, 7) == 0)
      return false;
  return true;
}

std::vector<Splitting> craig_splittings(const Int &s, const Int &t) {
  Int x = 18 * ipow(s, 4);
  Int y = 3 * s * (ipow(t, 3) - 6 * ipow(s, 3));
  Int z = ipow(t, 4);
  Int w = t * (18 * ipow(s, 3) - ipow(t, 3));
  Int x3 = ipow(x, 3), y3 = ipow(y, 3), z3 = ipow(z, 3), w3 = ipow(w, 3);
  return {{x * y, x3 + y3 - z3}, {x * z, x3 - y3 + z3}, {x * w, x3 - y3 + w3}};
}

SpecializationResult craig_class_rank(const Int &s, const Int &t, const quadclass::CycleBudget &budget) {
  Int F = craig_F_value(s, t);
  int target = F < 0 ? 3 : 2;
  if (!craig_T(s, t)) {
    SpecializationResult r;
    r.point = {s, t};
    r.target_rank = target;
    r.outcome = Outcome::exceptional;
    r.note = "(s, t) is not in T";
    return r;
  }
  return certify_splittings({s, t}, craig_splittings(s, t), 3, target, budget);
}

std::vector<std::pair<Int, Int>> craig_pairs_by_size(long N, int sign) {
  std::vector<std::pair<Int, std::pair<Int, Int>>> found;
  for (long s = -N + 1; s < N; ++s)
    for (long t = -N + 1; t < N; ++t) {
      if (!craig_T(Int(s), Int(t)))
        continue;
      Int v = craig_F_value(Int(s), Int(t));
      if (sgn(v) != sign)
        continue;
      found.push_back({abs(v), {Int(s), Int(t)}});
    }
  std::sort(found.begin(), found.end());
  std::vector<std::pair<Int, Int>> out;
  for (auto &e : found)
    out.push_back(e.second);
  return out;
}

CraigTorsion craig_torsion_at(u64 p) {
  if (p < 5 || !is_probable_prime(from_u64(p)))
    throw PreconditionError("torsion certificates need a prime p >= 5");
  PolyRat f = at_s_one(craig_F());
  PolyFp fp = PolyFp::from_rat(f, p);
  if (fp.degree() != f.degree() || !is_squarefree_fp(fp))
    throw PreconditionError("bad reduction at " + std::to_string(p));
  auto roots = roots_fp(fp);
  if (roots.empty())
    throw PreconditionError("F(1, t) has no root mod " + std::to_string(p));
  CraigTorsion out;
  out.p = p;
  out.model = jactor::move_root_to_infinity(fp, roots.front());
  CraigParametrization P = craig_parametrization();
  BiPolyRat X3 = cube(P.x), Y3 = cube(P.y), Z3 = cube(P.z), W3 = cube(P.w);
  const BiPolyRat A[3] = {X3 + Y3 - Z3, X3 - Y3 + Z3, X3 - Y3 + W3};
  const int K = 12;
  PolyFp half = PolyFp::constant(p, fp::inv(2, p));
  for (const auto &Ai : A) {
    PolyFp a = PolyFp::from_rat(at_s_one(Ai) * Rat(1, 2), p);
    jactor::FunctionFp G = jactor::transport_function(out.model.map, a, half, K, p);
    out.divisors.push_back(jactor::divisor_of_function(out.model.curve, G.a, G.b, 3));
  }
  out.certificate = jactor::certify_torsion_rank(out.divisors, 3, out.model.curve);
  return out;
}

std::vector<CraigTorsion> craig_torsion_certificates(int count, u64 start) {
  std::vector<CraigTorsion> out;
  for (u64 p = std::max<u64>(start, 5); static_cast<int>(out.size()) < count; ++p) {
    if (!is_probable_prime(from_u64(p)))
      continue;
    try {
      out.push_back(craig_torsion_at(p));
    } catch (const PreconditionError &) {
    } catch (const CertificateError &) {
    }
    if (p > 100000)
      throw BudgetExceeded("no suitable primes below 100000");
  }
  return out;
}

} // namespace classforge::constructions
