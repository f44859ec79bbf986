#include "classforge/exactmath/poly_fp.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace classforge::exactmath {

namespace fp {

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1)
      r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 p) {
  // Extended Euclid on signed 128-bit values.
  __int128 r0 = p, r1 = a % p, s0 = 0, s1 = 1;
  if (r1 == 0)
    throw PreconditionError("inverse of zero modulo p");
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1)
    throw PreconditionError("element not invertible modulo p");
  __int128 res = s0 % static_cast<__int128>(p);
  if (res < 0)
    res += p;
  return static_cast<u64>(res);
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0)
    return 0;
  return pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 sqrt(u64 a, u64 p) {
  a %= p;
  if (a == 0)
    return 0;
  if (p == 2)
    return a;
  if (legendre(a, p) != 1)
    throw PreconditionError("square root of a non-residue");
  if (p % 4 == 3)
    return pow(a, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (legendre(z, p) != -1)
    ++z;
  u64 m = s, c = pow(z, q, p), t = pow(a, q, p), r = pow(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j)
      b = mul(b, b, p);
    m = i;
    c = mul(b, b, p);
    t = mul(t, c, p);
    r = mul(r, b, p);
  }
  return std::min(r, p - r);
}

u64 from_int(const Int &v, u64 p) { return to_u64(mod(v, from_u64(p))); }

u64 from_rat(const Rat &q, u64 p) {
  u64 den = from_int(q.get_den(), p);
  if (den == 0)
    throw PreconditionError("denominator divisible by p");
  return mul(from_int(q.get_num(), p), inv(den, p), p);
}

} // namespace fp

PolyFp::PolyFp(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto &c : c_)
    c %= p_;
  trim();
}

PolyFp PolyFp::from_rat(const PolyRat &f, u64 p) {
  std::vector<u64> v;
  v.reserve(f.coeffs().size());
  for (const auto &q : f.coeffs())
    v.push_back(fp::from_rat(q, p));
  return PolyFp(p, std::move(v));
}

PolyFp PolyFp::constant(u64 p, u64 c) { return PolyFp(p, {c}); }

PolyFp PolyFp::monomial(u64 p, u64 c, std::size_t deg) {
  std::vector<u64> v(deg + 1);
  v[deg] = c;
  return PolyFp(p, std::move(v));
}

void PolyFp::trim() {
  while (!c_.empty() && c_.back() == 0)
    c_.pop_back();
}

u64 PolyFp::lead() const {
  if (c_.empty())
    throw PreconditionError("leading coefficient of the zero polynomial");
  return c_.back();
}

u64 PolyFp::eval(u64 x) const {
  u64 acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = fp::add(fp::mul(acc, x, p_), *it, p_);
  return acc;
}

PolyFp PolyFp::derivative() const {
  if (c_.size() <= 1)
    return PolyFp(p_);
  std::vector<u64> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = fp::mul(c_[i], i % p_, p_);
  return PolyFp(p_, std::move(d));
}

PolyFp PolyFp::scaled(u64 s) const {
  std::vector<u64> v = c_;
  for (auto &c : v)
    c = fp::mul(c, s, p_);
  return PolyFp(p_, std::move(v));
}

PolyFp PolyFp::monic() const {
  if (c_.empty() || c_.back() == 1)
    return *this;
  return scaled(fp::inv(c_.back(), p_));
}

PolyFp PolyFp::compose(const PolyFp &inner) const {
  PolyFp acc(p_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += constant(p_, *it);
  }
  return acc;
}

PolyFp &PolyFp::operator+=(const PolyFp &o) {
  if (o.c_.size() > c_.size())
    c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[i] = fp::add(c_[i], o.c_[i], p_);
  trim();
  return *this;
}

PolyFp &PolyFp::operator-=(const PolyFp &o) {
  if (o.c_.size() > c_.size())
    c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[i] = fp::sub(c_[i], o.c_[i], p_);
  trim();
  return *this;
}

PolyFp &PolyFp::operator*=(const PolyFp &o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
  if (p_ < (u64(1) << 31)) {
    // Products fit in 62 bits; accumulate a few before reducing.
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0)
        continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
    }
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = fp::add(r[i + j], fp::mul(c_[i], o.c_[j], p_), p_);
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyFp operator-(const PolyFp &a) {
  std::vector<u64> v = a.c_;
  for (auto &c : v)
    c = fp::neg(c, a.p_);
  return PolyFp(a.p_, std::move(v));
}

bool operator<(const PolyFp &a, const PolyFp &b) {
  if (a.degree() != b.degree())
    return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::pair<PolyFp, PolyFp> divmod(const PolyFp &a, const PolyFp &b) {
  if (b.is_zero())
    throw PreconditionError("polynomial division by zero");
  u64 p = a.modulus() ? a.modulus() : b.modulus();
  if (a.degree() < b.degree())
    return {PolyFp(p), a};
  std::vector<u64> rem = a.coeffs();
  std::vector<u64> quo(a.degree() - b.degree() + 1);
  const auto &bc = b.coeffs();
  u64 inv = fp::inv(b.lead(), p);
  int db = b.degree();
  for (int i = a.degree() - db; i >= 0; --i) {
    u64 q = fp::mul(rem[i + db], inv, p);
    quo[i] = q;
    if (q == 0)
      continue;
    for (int j = 0; j <= db; ++j)
      rem[i + j] = fp::sub(rem[i + j], fp::mul(q, bc[j], p), p);
  }
  rem.resize(db);
  return {PolyFp(p, std::move(quo)), PolyFp(p, std::move(rem))};
}

PolyFp operator/(const PolyFp &a, const PolyFp &b) { return divmod(a, b).first; }
PolyFp operator%(const PolyFp &a, const PolyFp &b) { return divmod(a, b).second; }

std::string PolyFp::to_string(const char *var) const {
  if (c_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0)
      continue;
    if (!first)
      os << " + ";
    first = false;
    if (c_[i] != 1 || i == 0)
      os << c_[i];
    if (i > 0) {
      if (c_[i] != 1)
        os << "*";
      os << var;
      if (i > 1)
        os << "^" << i;
    }
  }
  return os.str();
}

PolyFp poly_gcd(const PolyFp &f, const PolyFp &g) {
  PolyFp a = f, b = g;
  while (!b.is_zero()) {
    PolyFp r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

XgcdFp poly_xgcd(const PolyFp &f, const PolyFp &g) {
  u64 p = f.modulus() ? f.modulus() : g.modulus();
  PolyFp r0 = f, r1 = g;
  PolyFp s0 = PolyFp::constant(p, 1), s1(p), t0(p), t1 = PolyFp::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolyFp s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    PolyFp t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero())
    return {r0, s0, t0};
  u64 li = fp::inv(r0.lead(), p);
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

PolyFp powmod(const PolyFp &base, const Int &e, const PolyFp &modulus) {
  if (e < 0)
    throw PreconditionError("negative exponent in powmod");
  u64 p = modulus.modulus();
  PolyFp result = PolyFp::constant(p, 1) % modulus;
  PolyFp b = base % modulus;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(e.get_mpz_t(), i))
      result = (result * b) % modulus;
  }
  return result;
}

PolyFp powmod(const PolyFp &base, u64 e, const PolyFp &modulus) {
  return powmod(base, from_u64(e), modulus);
}

PolyFp invmod(const PolyFp &a, const PolyFp &m) {
  XgcdFp x = poly_xgcd(a % m, m);
  if (x.d.degree() != 0)
    throw PreconditionError("polynomial not invertible modulo m");
  return x.s % m;
}

namespace {

// p-th root of a polynomial whose derivative vanishes (all exponents are
// multiples of p); coefficients are fixed by Frobenius on F_p.
PolyFp pth_root(const PolyFp &f) {
  u64 p = f.modulus();
  std::vector<u64> v;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p)
    v.push_back(f.coeffs()[i]);
  return PolyFp(p, std::move(v));
}

void squarefree_split(const PolyFp &f, unsigned mult, std::vector<std::pair<PolyFp, unsigned>> &out) {
  if (f.degree() < 1)
    return;
  PolyFp fd = f.derivative();
  if (fd.is_zero()) {
    squarefree_split(pth_root(f), mult * static_cast<unsigned>(f.modulus()), out);
    return;
  }
  PolyFp c = poly_gcd(f, fd);
  PolyFp w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    PolyFp y = poly_gcd(w, c);
    PolyFp z = w / y;
    if (z.degree() > 0)
      out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0)
    squarefree_split(pth_root(c.monic()), mult * static_cast<unsigned>(f.modulus()), out);
}

std::vector<std::pair<PolyFp, int>> distinct_degree(PolyFp f) {
  std::vector<std::pair<PolyFp, int>> out;
  u64 p = f.modulus();
  PolyFp x = PolyFp::x(p);
  PolyFp h = x % f;
  int i = 1;
  while (f.degree() >= 2 * i) {
    h = powmod(h, p, f);
    PolyFp g = poly_gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() > 0)
    out.emplace_back(f.monic(), f.degree());
  return out;
}

void equal_degree(const PolyFp &g, int d, std::mt19937_64 &rng, std::vector<PolyFp> &out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  u64 p = g.modulus();
  Int e = (ipow(from_u64(p), d) - 1) / 2;
  while (true) {
    std::vector<u64> a(g.degree());
    for (auto &c : a)
      c = rng() % p;
    PolyFp r(p, a);
    if (r.degree() < 1)
      continue;
    PolyFp b;
    if (p == 2) {
      // Trace map over F_{2^d}: a + a^2 + ... + a^{2^{d-1}}.
      PolyFp t = r % g, acc = t;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % g;
        acc += t;
      }
      b = acc;
    } else {
      b = powmod(r, e, g) - PolyFp::constant(p, 1);
    }
    PolyFp s = poly_gcd(g, b);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(g / s, d, rng, out);
      return;
    }
  }
}

void require_prime(u64 p) {
  if (p < 2 || !is_probable_prime(from_u64(p)))
    throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
}

} // namespace

std::vector<FpFactor> factor_fp(const PolyFp &f) {
  require_prime(f.modulus());
  if (f.is_zero())
    throw PreconditionError("factorization of the zero polynomial");
  std::vector<std::pair<PolyFp, unsigned>> sqf;
  squarefree_split(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x5eedc1a55f0e9e1ull);
  std::vector<FpFactor> out;
  for (const auto &[part, mult] : sqf) {
    for (const auto &[g, d] : distinct_degree(part)) {
      std::vector<PolyFp> irr;
      equal_degree(g, d, rng, irr);
      for (auto &q : irr)
        out.push_back({std::move(q), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const FpFactor &a, const FpFactor &b) {
    if (a.factor == b.factor)
      return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  // Merge equal irreducibles arising from different squarefree layers.
  std::vector<FpFactor> merged;
  for (auto &fa : out) {
    if (!merged.empty() && merged.back().factor == fa.factor)
      merged.back().multiplicity += fa.multiplicity;
    else
      merged.push_back(std::move(fa));
  }
  return merged;
}

bool is_squarefree_fp(const PolyFp &f) {
  if (f.is_zero())
    return false;
  if (f.degree() < 1)
    return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

bool is_irreducible_fp(const PolyFp &f) {
  if (f.degree() < 1)
    return false;
  auto fs = factor_fp(f);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

std::vector<u64> roots_fp(const PolyFp &f) {
  require_prime(f.modulus());
  if (f.is_zero())
    throw PreconditionError("roots of the zero polynomial");
  std::vector<u64> out;
  if (f.degree() < 1)
    return out;
  u64 p = f.modulus();
  PolyFp x = PolyFp::x(p);
  PolyFp g = poly_gcd(f, powmod(x, p, f.monic()) - x);
  if (g.degree() < 1)
    return out;
  std::mt19937_64 rng(0x5eedc1a55f0e9e1ull);
  std::vector<PolyFp> lin;
  equal_degree(g, 1, rng, lin);
  for (const auto &l : lin)
    out.push_back(fp::neg(l.coeff(0), p));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace classforge::exactmath
