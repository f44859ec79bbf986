#include "classforge/exactmath/factor_int.hpp"

#include "classforge/error.hpp"

#include <algorithm>
#include <map>

namespace classforge::exactmath {

Int IntFactorization::value() const {
  Int v = cofactor * sign;
  for (const auto &[p, e] : factors)
    v *= ipow(p, e);
  return v;
}

bool is_probable_prime(const Int &n) {
  if (n < 2)
    return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

int kronecker_symbol(const Int &a, const Int &n) {
  if (n == 0)
    throw PreconditionError("Kronecker symbol with n = 0");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

bool power_residue(const Int &y, const Int &p, const Int &q) {
  if (!is_probable_prime(q))
    throw PreconditionError("power residue modulus must be prime");
  if (!is_probable_prime(p))
    throw PreconditionError("power residue index must be prime");
  if (p == 2 ? mod(q, 4) != 1 : mod(q, p) != 1)
    throw PreconditionError("power residue needs q = 1 mod p (q = 1 mod 4 for p = 2)");
  if (gcd(y, q) != 1)
    throw PreconditionError("power residue needs gcd(y, q) = 1");
  Int r, e = (q - 1) / p, base = mod(y, q);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
  return r == 1;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 gcd64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Brent's cycle finding with batched gcds. Returns a nontrivial factor or 0.
u64 rho64(u64 n, u64 c, u64 &budget) {
  auto f = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  const u64 block = 128;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i)
      y = f(y);
    for (u64 k = 0; k < r && g == 1; k += block) {
      ys = y;
      u64 steps = std::min(block, r - k);
      if (budget < steps)
        return 0;
      budget -= steps;
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = static_cast<u64>((static_cast<u128>(q) * (x > y ? x - y : y - x)) % n);
      }
      g = gcd64(q, n);
    }
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd64(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g == n ? 0 : g;
}

Int rho_big(const Int &n, unsigned long c, u64 &budget) {
  Int y = 2, x = 2, ys = 2, q = 1, g = 1, t;
  auto f = [&](Int &v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  const u64 block = 128;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    for (u64 i = 0; i < r; ++i)
      f(y);
    for (u64 k = 0; k < r && g == 1; k += block) {
      ys = y;
      u64 steps = std::min(block, r - k);
      if (budget < steps)
        return 0;
      budget -= steps;
      for (u64 i = 0; i < steps; ++i) {
        f(y);
        t = abs(x - y);
        q *= t;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
    }
  }
  if (g == n) {
    do {
      f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

// Splits composite n into primes, or leaves it in `stuck` when the budget runs out.
void split(const Int &n, u64 &budget, std::map<Int, unsigned> &out, std::vector<Int> &stuck) {
  if (n == 1)
    return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int r = isqrt(n);
  if (r * r == n) {
    split(r, budget, out, stuck);
    split(r, budget, out, stuck);
    return;
  }
  Int d = 0;
  for (unsigned long c = 1; d == 0 && budget > 0; ++c) {
    if (fits_i64(n) && n > 0) {
      u64 f = rho64(to_u64(n), c, budget);
      d = from_u64(f);
    } else {
      d = rho_big(n, c, budget);
    }
  }
  if (d == 0) {
    stuck.push_back(n);
    return;
  }
  split(d, budget, out, stuck);
  split(n / d, budget, out, stuck);
}

} // namespace

IntFactorization factor_int(const Int &n, const FactorBudget &budget) {
  if (n == 0)
    throw PreconditionError("factorization of zero");
  IntFactorization res;
  res.sign = n < 0 ? -1 : 1;
  Int m = abs(n);
  std::map<Int, unsigned> found;
  Int root = isqrt(m);
  for (u64 d = 2; d <= budget.trial_limit && m > 1 && mpz_cmp_ui(root.get_mpz_t(), d) >= 0;
       d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    if (e) {
      found[from_u64(d)] += e;
      root = isqrt(m);
    }
  }
  u64 rb = budget.rho_iterations;
  std::vector<Int> stuck;
  split(m, rb, found, stuck);
  for (const auto &[p, e] : found)
    res.factors.emplace_back(p, e);
  for (const auto &s : stuck)
    res.cofactor *= s;
  res.complete = stuck.empty();
  return res;
}

Int squarefree_part(const Int &n, const FactorBudget &budget) {
  IntFactorization f = factor_int(n, budget);
  if (!f.complete)
    throw BudgetExceeded("factorization of " + to_string(n) + " incomplete; cofactor " +
                         to_string(f.cofactor));
  Int r = f.sign;
  for (const auto &[p, e] : f.factors)
    if (e % 2)
      r *= p;
  return r;
}

} // namespace classforge::exactmath
