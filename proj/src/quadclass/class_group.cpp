#include "classforge/quadclass/class_group.hpp"

#include "classforge/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace classforge::quadclass {

using namespace exactmath;

Int ClassGroupStructure::order() const {
  Int h = 1;
  for (const auto &d : divisors)
    h *= d;
  return h;
}

std::string ClassGroupStructure::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < divisors.size(); ++i)
    s += (i ? "," : "") + divisors[i].get_str();
  return s + "]";
}

std::vector<QuadForm> reduced_forms_definite(const Int &D) {
  if (D >= 0)
    throw PreconditionError("definite enumeration needs D < 0");
  if (!fits_i64(D))
    throw PreconditionError("discriminant too large to enumerate");
  const long long d = to_i64(D), ad = -d;
  std::vector<QuadForm> out;
  for (long long a = 1; 3 * a * a <= ad; ++a) {
    long long b0 = -a + 1;
    if ((b0 - d) % 2 != 0)
      ++b0;
    for (long long b = b0; b <= a; b += 2) {
      long long num = b * b - d;
      if (num % (4 * a))
        continue;
      long long c = num / (4 * a);
      if (c < a)
        continue;
      if (a == c && b < 0)
        continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1)
        continue;
      out.push_back({Int(static_cast<long>(a)), Int(static_cast<long>(b)), Int(static_cast<long>(c))});
    }
  }
  return out;
}

std::vector<QuadForm> reduced_forms_indefinite(const Int &D) {
  if (D <= 0 || is_square(D))
    throw PreconditionError("indefinite enumeration needs a positive non-square D");
  if (!fits_i64(D))
    throw PreconditionError("discriminant too large to enumerate");
  const long long d = to_i64(D);
  const long long s = to_i64(isqrt(D));
  std::vector<QuadForm> out;
  for (long long b = (d % 2 == 0) ? 2 : 1; b <= s; b += 2) {
    long long n = (d - b * b) / 4;   // n = -ac > 0
    long long lo = (s - b) / 2 + 1, hi = (s + b) / 2;
    for (long long a = std::max(lo, 1LL); a <= hi; ++a) {
      if (n % a)
        continue;
      long long c = n / a;
      if (std::gcd(std::gcd(a, b), c) != 1)
        continue;
      Int A(static_cast<long>(a)), B(static_cast<long>(b)), C(static_cast<long>(c));
      out.push_back({A, B, -C});
      out.push_back({-A, B, C});
    }
  }
  return out;
}

ClassGroupStructure structure_from_orders(const std::vector<Int> &orders) {
  Int h = static_cast<unsigned long>(orders.size());
  IntFactorization fh = factor_int(h);
  // For each prime p, r_k = log_p(#G[p^k] / #G[p^(k-1)]).
  std::vector<std::pair<Int, std::vector<unsigned>>> ranks;
  for (const auto &[p, e] : fh.factors) {
    std::vector<unsigned> rk;
    std::size_t prev = 1;
    Int pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      std::size_t cnt = 0;
      for (const auto &o : orders)
        if (mpz_divisible_p(pk.get_mpz_t(), o.get_mpz_t()))
          ++cnt;
      std::size_t ratio = cnt / prev;
      unsigned r = 0;
      Int q = static_cast<unsigned long>(ratio);
      while (q > 1) {
        q /= p;
        ++r;
      }
      if (r == 0)
        break;
      rk.push_back(r);
      prev = cnt;
    }
    ranks.emplace_back(p, rk);
  }
  unsigned width = 0;
  for (const auto &[p, rk] : ranks)
    if (!rk.empty())
      width = std::max(width, rk[0]);
  ClassGroupStructure g;
  // The i-th largest invariant collects p^{#{k : r_k >= i}} over all p.
  for (unsigned i = width; i >= 1; --i) {
    Int d = 1;
    for (const auto &[p, rk] : ranks) {
      unsigned cnt = 0;
      for (auto r : rk)
        if (r >= i)
          ++cnt;
      d *= ipow(p, cnt);
    }
    g.divisors.push_back(d);
  }
  return g;
}

namespace {

// Group law on class indices for an enumerated set of classes.
struct EnumeratedGroup {
  std::vector<QuadForm> reps;
  std::map<QuadForm, std::size_t> index;   // every reduced form -> class
  std::size_t identity = 0;

  std::size_t class_of(const QuadForm &f) const {
    auto it = index.find(reduce(f));
    if (it == index.end())
      throw Error("reduced form " + f.to_string() + " missing from enumeration");
    return it->second;
  }
};

Int element_order(const EnumeratedGroup &G, std::size_t g, const Int &h, const IntFactorization &fh) {
  Int ord = h;
  for (const auto &[p, e] : fh.factors) {
    (void)e;
    while (mpz_divisible_p(ord.get_mpz_t(), p.get_mpz_t()) &&
           G.class_of(power(G.reps[g], ord / p)) == G.identity)
      ord /= p;
  }
  return ord;
}

} // namespace

ClassGroupStructure class_group(const FundDisc &D, const EnumerationBound &bound) {
  if (abs(D.D) > bound.max_abs_disc)
    throw PreconditionError("|D| = " + to_string(Int(abs(D.D))) + " exceeds the enumeration bound " +
                            to_string(bound.max_abs_disc) + "; use certificates");
  EnumeratedGroup G;
  if (D.D < 0) {
    G.reps = reduced_forms_definite(D.D);
    for (std::size_t i = 0; i < G.reps.size(); ++i)
      G.index[G.reps[i]] = i;
  } else {
    auto forms = reduced_forms_indefinite(D.D);
    for (const auto &f : forms) {
      if (G.index.count(f))
        continue;
      std::size_t id = G.reps.size();
      G.reps.push_back(f);
      QuadForm g = f;
      do {
        G.index[g] = id;
        g = rho(g);
      } while (g != f);
    }
  }
  G.identity = G.class_of(principal_form(D.D));
  Int h = static_cast<unsigned long>(G.reps.size());
  IntFactorization fh = factor_int(h);
  std::vector<Int> orders;
  orders.reserve(G.reps.size());
  for (std::size_t i = 0; i < G.reps.size(); ++i)
    orders.push_back(element_order(G, i, h, fh));
  return structure_from_orders(orders);
}

int m_rank(const ClassGroupStructure &G, const Int &m) {
  if (m <= 1)
    throw PreconditionError("m-rank needs m > 1");
  IntFactorization fm = factor_int(m);
  int best = -1;
  for (const auto &[p, e] : fm.factors) {
    Int pe = ipow(p, e);
    int cnt = 0;
    for (const auto &d : G.divisors)
      if (mpz_divisible_p(d.get_mpz_t(), pe.get_mpz_t()))
        ++cnt;
    best = best < 0 ? cnt : std::min(best, cnt);
  }
  return std::max(best, 0);
}

int two_rank_genus(const FundDisc &D) {
  IntFactorization f = factor_int(D.D);
  if (!f.complete)
    throw BudgetExceeded("factorization of " + to_string(D.D) + " incomplete");
  return static_cast<int>(f.factors.size()) - 1;
}

} // namespace classforge::quadclass
