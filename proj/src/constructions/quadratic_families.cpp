#include "classforge/constructions/quadratic_families.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/quadclass/fund_disc.hpp"

namespace classforge::constructions {

using namespace exactmath;

namespace {

std::vector<Int> prime_divisors(unsigned long m) {
  std::vector<Int> out;
  for (const auto &[p, e] : factor_int(Int(m)).factors)
    out.push_back(p);
  return out;
}

} // namespace

std::vector<std::array<Int, 2>> nagell_points(unsigned long m, long N) {
  std::vector<std::array<Int, 2>> out;
  for (long x = -N + 1; x < N; ++x)
    for (long y = -N + 1; y < N; ++y) {
      Int X(x), Y(y);
      if (gcd(X, Y) != 1 || Y * Y - 4 * ipow(X, m) >= 0)
        continue;
      out.push_back({X, Y});
    }
  return out;
}

SpecializationResult nagell_point(const Int &x, const Int &y, unsigned long m) {
  if (m < 2)
    throw PreconditionError("m must be at least 2");
  if (gcd(x, y) != 1 || y * y - 4 * ipow(x, m) >= 0) {
    SpecializationResult r;
    r.point = {x, y};
    r.target_rank = 1;
    r.outcome = Outcome::exceptional;
    r.note = "(x, y) violates gcd(x, y) = 1 or y^2 - 4x^m < 0";
    return r;
  }
  return certify_splittings({x, y}, {{x, y}}, m, 1);
}

std::vector<SpecializationResult> nagell_family(unsigned long m, long N) {
  std::vector<SpecializationResult> out;
  for (const auto &[x, y] : nagell_points(m, N))
    out.push_back(nagell_point(x, y, m));
  return out;
}

bool yamamoto_conditions(const Int &x, const Int &y, unsigned long m, const std::vector<Int> &q) {
  auto primes = prime_divisors(m);
  if (q.size() != primes.size())
    throw PreconditionError("need one prime q_i per prime divisor of m");
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Int &p = primes[i];
    if (!is_probable_prime(q[i]))
      throw PreconditionError("q_i must be prime");
    bool ok = p == 2 ? mod(q[i], 4) == 1 : mod(q[i], p) == 1;
    if (!ok)
      throw PreconditionError("q_" + std::to_string(i + 1) + " = " + exactmath::to_string(q[i]) +
                              " violates the congruence hypothesis");
  }
  if (gcd(x, y) != 1)
    return false;
  Int radicand = y * y - 4 * ipow(x, m);
  if (radicand >= 0)
    return false;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (mod(x, q[i]) != 0 || mod(y, q[i]) == 0)
      return false;
    if (power_residue(y, primes[i], q[i]))
      return false;
  }
  quadclass::FundDisc D = quadclass::fundamental_discriminant(radicand);
  return !excluded_small_field(D);
}

std::vector<std::array<Int, 2>> yamamoto_points(unsigned long m, const std::vector<Int> &q, long N) {
  std::vector<std::array<Int, 2>> out;
  for (const auto &pt : nagell_points(m, N))
    if (yamamoto_conditions(pt[0], pt[1], m, q))
      out.push_back(pt);
  return out;
}

SparsePoly<3> ternary_form(unsigned long m) {
  using P = SparsePoly<3>;
  unsigned e = static_cast<unsigned>(m);
  P xm = P::var(0).pow(e), ym = P::var(1).pow(e), zm = P::var(2).pow(e);
  return xm * xm + ym * ym + zm * zm - Rat(2) * (xm * ym) - Rat(2) * (xm * zm) - Rat(2) * (ym * zm);
}

Int ternary_value(const Int &x, const Int &y, const Int &z, unsigned long m) {
  Int xm = ipow(x, m), ym = ipow(y, m), zm = ipow(z, m);
  return xm * xm + ym * ym + zm * zm - 2 * xm * ym - 2 * xm * zm - 2 * ym * zm;
}

std::vector<IdentityCheck> ternary_identity_report(unsigned long m) {
  using P = SparsePoly<3>;
  unsigned e = static_cast<unsigned>(m);
  P f = ternary_form(m);
  P xm = P::var(0).pow(e), ym = P::var(1).pow(e), zm = P::var(2).pow(e);
  std::string ms = std::to_string(m);
  return {{"f = (x^" + ms + "+y^" + ms + "-z^" + ms + ")^2 - 4x^" + ms + "y^" + ms,
           f == (xm + ym - zm).pow(2) - Rat(4) * xm * ym},
          {"f = (x^" + ms + "-y^" + ms + "+z^" + ms + ")^2 - 4x^" + ms + "z^" + ms,
           f == (xm - ym + zm).pow(2) - Rat(4) * xm * zm}};
}

bool ternary_identity_check(unsigned long m) {
  for (const auto &c : ternary_identity_report(m))
    if (!c.holds)
      return false;
  return true;
}

bool ternary_coprime(const Int &x, const Int &y, const Int &z, unsigned long m) {
  Int xm = ipow(x, m), ym = ipow(y, m), zm = ipow(z, m);
  return gcd(xm - ym, z) == 1 && gcd(xm - zm, y) == 1 && gcd(ym - zm, x) == 1;
}

SpecializationResult ternary_point(const Int &x, const Int &y, const Int &z, unsigned long m) {
  if (m < 2)
    throw PreconditionError("m must be at least 2");
  Int f = ternary_value(x, y, z, m);
  int target = f < 0 ? 2 : 1;
  if (!ternary_coprime(x, y, z, m)) {
    SpecializationResult r;
    r.point = {x, y, z};
    r.target_rank = target;
    r.outcome = Outcome::exceptional;
    r.note = "coprimality conditions fail";
    return r;
  }
  Int xm = ipow(x, m), ym = ipow(y, m), zm = ipow(z, m);
  return certify_splittings({x, y, z}, {{x * y, xm + ym - zm}, {x * z, xm - ym + zm}}, m, target);
}

std::vector<std::array<Int, 3>> ternary_points(unsigned long m, long N) {
  std::vector<std::array<Int, 3>> out;
  for (long x = -N + 1; x < N; ++x)
    for (long y = -N + 1; y < N; ++y)
      for (long z = -N + 1; z < N; ++z)
        if (ternary_coprime(Int(x), Int(y), Int(z), m))
          out.push_back({Int(x), Int(y), Int(z)});
  return out;
}

std::vector<SpecializationResult> ternary_family(unsigned long m, long N) {
  std::vector<SpecializationResult> out;
  for (const auto &[x, y, z] : ternary_points(m, N))
    out.push_back(ternary_point(x, y, z, m));
  return out;
}

} // namespace classforge::constructions
