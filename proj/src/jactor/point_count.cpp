#include "classforge/jactor/point_count.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <thread>

namespace classforge::jactor {

using namespace exactmath;

namespace {

constexpr int kMaxDegree = 16;

// F_{p^k} = F_p[x] / (x^k + m_{k-1} x^{k-1} + ... + m_0), elements as
// coefficient arrays; p < 2^31 so products of residues fit in 64 bits.
struct ExtField {
  u64 p;
  int k;
  std::vector<u64> m;

  void mul(const u64 *a, const u64 *b, u64 *out) const {
    u64 t[2 * kMaxDegree] = {0};
    for (int i = 0; i < k; ++i) {
      if (!a[i])
        continue;
      for (int j = 0; j < k; ++j)
        t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    }
    for (int i = 2 * k - 2; i >= k; --i) {
      u64 c = t[i];
      if (!c)
        continue;
      for (int j = 0; j < k; ++j)
        t[i - k + j] = (t[i - k + j] + (p - m[j]) * c) % p;
    }
    for (int i = 0; i < k; ++i)
      out[i] = t[i];
  }

  u64 index(const u64 *a) const {
    u64 idx = 0;
    for (int i = k - 1; i >= 0; --i)
      idx = idx * p + a[i];
    return idx;
  }

  void element(u64 idx, u64 *a) const {
    for (int i = 0; i < k; ++i, idx /= p)
      a[i] = idx % p;
  }
};

ExtField make_field(u64 p, int k) {
  ExtField F{p, k, {}};
  if (k == 1) {
    F.m = {0};
    return F;
  }
  u64 count = 1;
  for (int i = 0; i < k; ++i)
    count *= p;
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<u64> c(k + 1, 1);
    for (u64 t = idx, i = 0; i < static_cast<u64>(k); ++i, t /= p)
      c[i] = t % p;
    if (c[0] == 0)
      continue;
    if (is_irreducible_fp(PolyFp(p, c))) {
      F.m.assign(c.begin(), c.begin() + k);
      return F;
    }
  }
  throw Error("no irreducible polynomial found");
}

template <class Fn> void parallel_for(u64 n, unsigned threads, Fn fn) {
  if (threads <= 1 || n < 4096) {
    fn(0, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] { fn(n * t / threads, n * (t + 1) / threads, t); });
  for (auto &th : pool)
    th.join();
}

// sum over x in F_{p^k} of the quadratic character of f(x).
long long character_sum(const PolyFp &f, int k, unsigned threads) {
  const u64 p = f.modulus();
  ExtField F = make_field(p, k);
  u64 q = 1;
  for (int i = 0; i < k; ++i)
    q *= p;
  std::unique_ptr<std::atomic<unsigned char>[]> square(new std::atomic<unsigned char>[q]);
  for (u64 i = 0; i < q; ++i)
    square[i].store(0, std::memory_order_relaxed);
  parallel_for(q, threads, [&](u64 lo, u64 hi, unsigned) {
    u64 a[kMaxDegree], s[kMaxDegree];
    for (u64 x = lo; x < hi; ++x) {
      F.element(x, a);
      F.mul(a, a, s);
      square[F.index(s)].store(1, std::memory_order_relaxed);
    }
  });
  std::vector<long long> partial(std::max(threads, 1u), 0);
  const auto &fc = f.coeffs();
  parallel_for(q, threads, [&](u64 lo, u64 hi, unsigned t) {
    u64 a[kMaxDegree], acc[kMaxDegree];
    long long sum = 0;
    for (u64 x = lo; x < hi; ++x) {
      F.element(x, a);
      for (int i = 0; i < k; ++i)
        acc[i] = 0;
      for (std::size_t i = fc.size(); i-- > 0;) {
        F.mul(acc, a, acc);
        acc[0] = (acc[0] + fc[i]) % p;
      }
      u64 idx = F.index(acc);
      if (idx)
        sum += square[idx].load(std::memory_order_relaxed) ? 1 : -1;
    }
    partial[t] = sum;
  });
  long long total = 0;
  for (auto v : partial)
    total += v;
  return total;
}

void require_counting(const HyperCurve &C, int up_to, const PointCountBudget &budget) {
  if (C.over_q())
    throw PreconditionError("point counting needs a curve over F_p");
  if (C.p >= (1ull << 31))
    throw PreconditionError("point counting supports p < 2^31");
  if (up_to < 1 || up_to > kMaxDegree)
    throw PreconditionError("extension degree out of range");
  if (std::pow(static_cast<double>(C.p), up_to) > budget.max_field_size)
    throw BudgetExceeded("p^" + std::to_string(up_to) + " exceeds the point counting budget");
}

} // namespace

std::vector<Int> curve_point_counts(const HyperCurve &C, int up_to, const PointCountBudget &budget) {
  require_counting(C, up_to, budget);
  unsigned threads = budget.threads ? budget.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<Int> out;
  Int q = 1;
  for (int k = 1; k <= up_to; ++k) {
    q *= static_cast<unsigned long>(C.p);
    long long s = character_sum(C.f_p, k, threads);
    out.push_back(q + 1 + Int(static_cast<long>(s)));
  }
  return out;
}

std::vector<Int> l_polynomial_prefix(const std::vector<Int> &counts, u64 p) {
  const std::size_t k = counts.size();
  std::vector<Int> s(k + 1);
  Int q = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    q *= static_cast<unsigned long>(p);
    s[j] = q + 1 - counts[j - 1];
  }
  std::vector<Int> a(k + 1);
  a[0] = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    Int acc = 0;
    for (std::size_t j = 1; j <= i; ++j)
      acc += a[i - j] * s[j];
    acc = -acc;
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), i))
      throw Error("Newton identity produced a non-integer coefficient");
    a[i] = acc / static_cast<unsigned long>(i);
  }
  return a;
}

std::vector<Int> zeta_numerator(const HyperCurve &C, const PointCountBudget &budget) {
  const int g = C.genus;
  auto a = l_polynomial_prefix(curve_point_counts(C, g, budget), C.p);
  a.resize(2 * g + 1);
  for (int i = 0; i < g; ++i)
    a[2 * g - i] = ipow(from_u64(C.p), g - i) * a[i];
  return a;
}

Int jacobian_order(const HyperCurve &C, const PointCountBudget &budget) {
  Int total = 0;
  for (const auto &c : zeta_numerator(C, budget))
    total += c;
  return total;
}

Int class_order(const MumfordDivisor &D, const HyperCurve &C, const PointCountBudget &budget,
                u64 fallback_limit) {
  if (D.is_identity())
    return 1;
  Int J;
  try {
    J = jacobian_order(C, budget);
  } catch (const BudgetExceeded &) {
    MumfordDivisor acc = D;
    for (u64 n = 1; n <= fallback_limit; ++n) {
      if (acc.is_identity())
        return from_u64(n);
      acc = cantor_add(acc, D, C);
    }
    throw;
  }
  if (!scalar_mul(J, D, C).is_identity())
    throw Error("Jacobian order does not kill the class; point counts inconsistent");
  IntFactorization fj = factor_int(J);
  if (!fj.complete)
    throw BudgetExceeded("factorization of the Jacobian order incomplete");
  Int n = J;
  for (const auto &[q, e] : fj.factors) {
    (void)e;
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()) && scalar_mul(n / q, D, C).is_identity())
      n /= q;
  }
  return n;
}

} // namespace classforge::jactor
