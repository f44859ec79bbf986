#include "classforge/exactmath/number.hpp"

#include "classforge/error.hpp"

#include <limits>

namespace classforge::exactmath {

Int parse_int(std::string_view s) {
  std::string str(s);
  if (!str.empty() && str[0] == '+')
    str.erase(0, 1);
  Int r;
  if (str.empty() || r.set_str(str, 10) != 0)
    throw PreconditionError("not a decimal integer: '" + std::string(s) + "'");
  return r;
}

Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos)
    return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0)
    throw PreconditionError("zero denominator in '" + std::string(s) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat &v) {
  if (v.get_den() == 1)
    return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int ipow(const Int &base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat &base, long e) {
  if (e >= 0)
    return Rat(ipow(base.get_num(), e), ipow(base.get_den(), e));
  if (base == 0)
    throw PreconditionError("negative power of zero");
  Rat r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
  r.canonicalize();
  return r;
}

Int gcd(const Int &a, const Int &b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int &a, const Int &b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int isqrt(const Int &n) {
  if (n < 0)
    throw PreconditionError("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Int &n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_rat_square(const Rat &q) {
  return is_square(q.get_num()) && is_square(q.get_den());
}

Int iroot(const Int &n, unsigned long m, bool &ok) {
  Int r;
  if (n < 0) {
    if (m % 2 == 0) {
      ok = false;
      return 0;
    }
    Int pos = -n;
    ok = mpz_root(r.get_mpz_t(), pos.get_mpz_t(), m) != 0;
    return -r;
  }
  ok = mpz_root(r.get_mpz_t(), n.get_mpz_t(), m) != 0;
  return r;
}

long valuation(const Int &n, const Int &p) {
  if (n == 0)
    throw PreconditionError("valuation of zero");
  Int t = n;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

long valuation(const Rat &q, const Int &p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

Int floor_div(const Int &a, const Int &b) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int mod(const Int &a, const Int &m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool fits_i64(const Int &v) {
  static const Int lo = from_i64(std::numeric_limits<std::int64_t>::min());
  static const Int hi = from_i64(std::numeric_limits<std::int64_t>::max());
  return v >= lo && v <= hi;
}

std::int64_t to_i64(const Int &v) {
  if (!fits_i64(v))
    throw PreconditionError("integer does not fit in 64 bits");
  Int a = abs(v);
  std::uint64_t u = to_u64(a);
  return v < 0 ? static_cast<std::int64_t>(~u + 1) : static_cast<std::int64_t>(u);
}

std::uint64_t to_u64(const Int &v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64)
    throw PreconditionError("integer does not fit in unsigned 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
  return out;
}

} // namespace classforge::exactmath
