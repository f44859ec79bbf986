#include "classforge/quadclass/ideal.hpp"

#include "classforge/error.hpp"

namespace classforge::quadclass {

using namespace exactmath;

namespace {

// Coordinates (u, v) of (X + Y sqrt(D))/2 = u + v w, w = (sigma + sqrt(D))/2.
std::pair<Int, Int> coords(const QuadElement &e, const Int &sigma) {
  Int t = e.X - e.Y * sigma;
  if (mod(t, 2) != 0)
    throw PreconditionError("element is not integral");
  return {t / 2, e.Y};
}

QuadElement times_omega(const QuadElement &e, const Int &D, const Int &sigma) {
  return {(e.X * sigma + e.Y * D) / 2, (e.X + e.Y * sigma) / 2};
}

} // namespace

IdealHNF ideal_from_generators(const Int &D, const std::vector<QuadElement> &gens) {
  Int sigma = mod(D, 2);
  Int x1 = 0, t = 0, y = 0;   // lattice basis (x1, 0), (t, y)
  auto add = [&](Int u, Int v) {
    if (v == 0) {
      x1 = gcd(x1, u);
    } else {
      Int g, al, be;
      mpz_gcdext(g.get_mpz_t(), al.get_mpz_t(), be.get_mpz_t(), y.get_mpz_t(), v.get_mpz_t());
      Int nt = al * t + be * u;
      Int rest = (v / g) * t - (y / g) * u;
      x1 = gcd(x1, rest);
      t = nt;
      y = g;
    }
    if (x1 != 0)
      t = mod(t, x1);
  };
  for (const auto &g : gens) {
    auto [u, v] = coords(g, sigma);
    add(u, v);
    auto [u2, v2] = coords(times_omega(g, D, sigma), sigma);
    add(u2, v2);
  }
  if (x1 == 0 || y == 0)
    throw PreconditionError("generators do not span a full-rank ideal");
  if (!mpz_divisible_p(x1.get_mpz_t(), y.get_mpz_t()) || !mpz_divisible_p(t.get_mpz_t(), y.get_mpz_t()))
    throw Error("lattice is not an ideal");
  IdealHNF res;
  res.content = y;
  Int a = x1 / y, tp = t / y;
  Int b = mod(2 * tp + sigma, 2 * a);
  if (!mpz_divisible_p(Int(b * b - D).get_mpz_t(), Int(4 * a).get_mpz_t()))
    throw Error("lattice is not an ideal");
  res.primitive = {a, b};
  return res;
}

QuadForm form_from_ideal(const QuadIdeal &I, const Int &D) { return form_from_ab(I.a, I.b, D); }

QuadForm ideal_class_from_mth_power(const Int &N, const Int &A, const FundDisc &D, unsigned long m) {
  if (m < 1)
    throw PreconditionError("m must be positive");
  if (N == 0)
    throw PreconditionError("N must be nonzero");
  Int F = A * A - 4 * ipow(N, m);
  if (F == 0 || !mpz_divisible_p(F.get_mpz_t(), D.D.get_mpz_t()))
    throw MismatchError("A^2 - 4N^m is not D times a square");
  Int q = F / D.D;
  if (q <= 0 || !is_square(q))
    throw MismatchError("A^2 - 4N^m is not D times a square");
  if (gcd(N, A) != 1)
    throw CertificateError("gcd(N, A) = " + to_string(gcd(N, A)) + " != 1");
  if (abs(N) == 1)
    return principal_form(D.D);
  Int k = isqrt(q);
  IdealHNF I = ideal_from_generators(D.D, {{2 * N, 0}, {A, k}});
  if (I.content != 1 || I.primitive.a != abs(N))
    throw CertificateError("ideal (N, alpha) does not have norm |N|");
  QuadForm f = reduce(form_from_ideal(I.primitive, D.D));
  QuadForm fm = power(f, Int(static_cast<unsigned long>(m)));
  if (is_principal(fm))
    return f;
  if (D.D > 0 && m % 2 == 1) {
    // alpha has negative norm: f^m is the narrow class of (-1, b, -c). Then
    // f^{m+1} has the wide class of f and narrow order dividing m.
    QuadForm p = principal_form(D.D);
    if (is_principal(compose(fm, QuadForm{-p.a, p.b, -p.c})))
      return reduce(power(f, Int(static_cast<unsigned long>(m + 1))));
  }
  throw CertificateError("m-th power of " + f.to_string() + " is not principal");
}

} // namespace classforge::quadclass
