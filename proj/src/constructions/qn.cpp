#include "classforge/constructions/qn.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/exactmath/json_io.hpp"
#include "classforge/exactmath/poly_fp.hpp"
#include "classforge/exactmath/resultant.hpp"
#include "classforge/exactmath/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace classforge::constructions {

using namespace exactmath;

namespace {

PolyRat lin(const Int &a, const Int &b) { return PolyRat{Rat(b), Rat(a)}; }

PolyRat ppow(const PolyRat &f, unsigned long e) {
  PolyRat r = PolyRat::constant(1);
  for (unsigned long i = 0; i < e; ++i)
    r *= f;
  return r;
}

Int as_int(const Rat &q) {
  if (q.get_den() != 1)
    throw Error("expected an integer value");
  return q.get_num();
}

std::vector<Int> prime_divisors(const Int &v) {
  IntFactorization fac = factor_int(abs(v));
  if (!fac.complete)
    throw BudgetExceeded("factorization incomplete; cofactor " + exactmath::to_string(fac.cofactor));
  std::vector<Int> out;
  for (const auto &[p, e] : fac.factors)
    out.push_back(p);
  return out;
}

Int rad(const Int &v) {
  if (v == 0)
    throw PreconditionError("radical of zero");
  Int r = 1;
  for (const auto &p : prime_divisors(v))
    r *= p;
  return r;
}

// |R| with every prime of A removed.
Int strip(Int R, const Int &A) {
  R = abs(R);
  Int g;
  while ((g = gcd(R, A)) > 1)
    R /= g;
  return R;
}

// S(y) != 0 mod ell for every integer y.
bool no_root_mod(const PolyRat &S, const Int &ell) {
  if (ell <= 100000) {
    unsigned long l = ell.get_ui();
    for (unsigned long y = 0; y < l; ++y) {
      Rat v = S.eval(Rat(y));
      if (mpz_divisible_ui_p(as_int(v).get_mpz_t(), l))
        return false;
    }
    return true;
  }
  if (!ell.fits_ulong_p())
    throw BudgetExceeded("prime too large for the root search");
  PolyFp s = PolyFp::from_rat(S, ell.get_ui());
  return !s.is_zero() && roots_fp(s).empty();
}

// gcd(L(y), S(y)) = 1 for every integer y; L constant or linear.
bool coprime_for_all_y(const PolyRat &L, const PolyRat &S, std::string &why) {
  if (L.degree() <= 0) {
    Int c = L.is_zero() ? Int(0) : as_int(L.coeff(0));
    if (c == 0) {
      why = "linear factor vanishes identically";
      return false;
    }
    for (const auto &ell : prime_divisors(c))
      if (!no_root_mod(S, ell)) {
        why = "prime " + exactmath::to_string(ell) + " divides both for some y";
        return false;
      }
    return true;
  }
  if (L.degree() != 1)
    throw PreconditionError("expected a linear polynomial in y");
  Int A = as_int(L.coeff(1)), B = as_int(L.coeff(0));
  Int g = gcd(A, B);
  if (g > 1)
    for (const auto &ell : prime_divisors(g))
      if (!no_root_mod(S, ell)) {
        why = "prime " + exactmath::to_string(ell) + " divides both for some y";
        return false;
      }
  if (S.is_zero()) {
    why = "second side vanishes identically";
    return false;
  }
  Int R = as_int(resultant(L, S));
  if (R == 0) {
    why = "common root in y";
    return false;
  }
  Int left = strip(R, A);
  if (left != 1) {
    why = "resultant has primes outside the leading coefficient: " + exactmath::to_string(left);
    return false;
  }
  return true;
}

template <class T> T konst(long v);
template <> Int konst<Int>(long v) { return Int(v); }
template <> PolyRat konst<PolyRat>(long v) { return PolyRat::constant(Rat(v)); }

// e t_i^{m(e-1)} t0^m + sigma prod_{j != i} (t_i^m - t_j^m)
template <class T>
T rp2_side(const QnFamily &F, const T &T0, const std::vector<T> &tm, std::size_t i) {
  T prod = konst<T>(1);
  for (std::size_t j = 0; j < tm.size(); ++j)
    if (j != i)
      prod = prod * (tm[i] - tm[j]);
  T lead = F.e == 1 ? T0 : T(konst<T>(2) * tm[i] * T0);
  if (F.sigma > 0)
    return T(lead + prod);
  return T(lead - prod);
}

double log_abs(const Int &v) {
  long ex;
  double d = mpz_get_d_2exp(&ex, v.get_mpz_t());
  return std::log(std::fabs(d)) + static_cast<double>(ex) * std::log(2.0);
}

double log_abs(const Rat &v) { return log_abs(v.get_num()) - log_abs(v.get_den()); }

bool squarefree_signature(const QnFamily &F, const Int &y, int &count) {
  PolyRat g = F.g_at(y);
  if (g.degree() != F.n)
    return false;
  PolyRat s = g / poly_gcd(g, g.derivative());
  count = sturm_real_root_count(s);
  return true;
}

std::vector<Int> small_primes(int count, long start = 2) {
  std::vector<Int> out;
  for (long p = start; static_cast<int>(out.size()) < count; ++p)
    if (is_probable_prime(Int(p)))
      out.push_back(Int(p));
  return out;
}

// Iterates k-subsets of {lo, ..., hi} in lexicographic order.
bool next_subset(std::vector<long> &s, long hi) {
  const long k = static_cast<long>(s.size());
  for (long i = k - 1; i >= 0; --i)
    if (s[i] < hi - (k - 1 - i)) {
      ++s[i];
      for (long j = i + 1; j < k; ++j)
        s[j] = s[j - 1] + 1;
      return true;
    }
  return false;
}

std::vector<long> first_subset(long k, long lo) {
  std::vector<long> s(k);
  for (long i = 0; i < k; ++i)
    s[i] = lo + i;
  return s;
}

QnFamily skeleton(unsigned long m, int n, int r1) {
  QnFamily F;
  F.m = m;
  F.n = n;
  F.r1 = r1;
  F.kind = qn_case(m, n, r1);
  F.growth_exponent = qn_growth_exponent(m, n, r1);
  F.e = F.kind == QnCase::no_real_odd_m ? 2 : 1;
  F.sigma = F.kind == QnCase::three_real ? -1 : 1;
  return F;
}

// Certificate, then the real-root count beyond the threshold, then an
// irreducible fibre among the first few above it.
bool acceptable(const QnFamily &F) {
  if (!qn_all_y_certificate(F).holds())
    return false;
  PolyRat disc = qn_discriminant(F);
  if (disc.is_zero())
    return false;
  Int y0 = std::max(qn_threshold(disc, F.g_coefficients().back()), Int(1));
  int count = -1;
  if (!squarefree_signature(F, y0, count) || count != F.r1)
    return false;
  for (int k = 0; k < 6; ++k)
    if (qn_irreducible(F.g_at(y0 + k)))
      return true;
  return false;
}

Int rat_numerator_abs(const Rat &q) { return abs(q.get_num()); }

} // namespace

std::string to_string(QnCase c) {
  switch (c) {
  case QnCase::one_or_two_real: return "one_or_two_real";
  case QnCase::three_real: return "three_real";
  case QnCase::no_real_odd_m: return "no_real_odd_m";
  case QnCase::no_real_even_m: return "no_real_even_m";
  case QnCase::totally_real: return "totally_real";
  case QnCase::odd_middle: return "odd_middle";
  case QnCase::even_middle: return "even_middle";
  }
  return "unknown";
}

QnCase qn_case(unsigned long m, int n, int r1) {
  if (m < 2 || n < 2)
    throw PreconditionError("m and n must exceed 1");
  if (r1 < 0 || r1 > n || (n - r1) % 2)
    throw PreconditionError("need r1 + 2 r2 = n with r1, r2 >= 0");
  if (n % 2 == 1 && r1 == 1)
    return QnCase::one_or_two_real;
  if (n % 2 == 1 && r1 == 3)
    return QnCase::three_real;
  if (n % 2 == 0 && r1 == 2)
    return QnCase::one_or_two_real;
  if (n % 2 == 0 && r1 == 0)
    return m % 2 ? QnCase::no_real_odd_m : QnCase::no_real_even_m;
  if (r1 == n)
    return QnCase::totally_real;
  return n % 2 ? QnCase::odd_middle : QnCase::even_middle;
}

long qn_growth_exponent(unsigned long m, int n, int r1) {
  const long M = static_cast<long>(m);
  switch (qn_case(m, n, r1)) {
  case QnCase::one_or_two_real:
  case QnCase::three_real:
  case QnCase::no_real_odd_m:
    return M * n;
  case QnCase::no_real_even_m:
    return M * n * (n - 1);
  case QnCase::totally_real:
    return 2 * M * (n - 1);
  case QnCase::odd_middle:
    return M * (r1 - 2) * (2 * n - r1 + 1);
  case QnCase::even_middle:
    return M * (r1 - 3) * (2 * n - r1 + 2);
  }
  return 0;
}

PolyRat QnFamily::t0() const { return ppow(t0_base, t0_power); }

std::vector<PolyRat> QnFamily::g_coefficients() const {
  std::vector<PolyRat> c{PolyRat::constant(1)};
  for (const auto &tj : t) {
    PolyRat tm = ppow(tj, m);
    std::vector<PolyRat> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= tm * c[k];
    }
    c = std::move(next);
  }
  for (auto &ck : c)
    ck *= Rat(sigma);
  if (static_cast<std::size_t>(e) >= c.size())
    c.resize(e + 1);
  c[e] += ppow(t0(), m);
  while (c.size() > 1 && c.back().is_zero())
    c.pop_back();
  return c;
}

PolyRat QnFamily::g_at(const Int &y) const {
  auto c = g_coefficients();
  std::vector<Rat> v;
  for (const auto &ck : c)
    v.push_back(ck.eval(Rat(y)));
  return PolyRat(v);
}

namespace {

std::vector<Int> values_at(const QnFamily &F, const Int &y, Int &T0) {
  Int t0v = as_int(F.t0().eval(Rat(y)));
  T0 = ipow(t0v, F.m);
  std::vector<Int> tm;
  for (const auto &tj : F.t)
    tm.push_back(ipow(as_int(tj.eval(Rat(y))), F.m));
  return tm;
}

} // namespace

bool qn_rp1(const QnFamily &F, const Int &y) {
  Int T0;
  auto tm = values_at(F, y, T0);
  Int t0v = as_int(F.t0().eval(Rat(y)));
  Int P = 1;
  for (std::size_t i = 0; i < tm.size(); ++i)
    for (std::size_t j = i + 1; j < tm.size(); ++j)
      P *= tm[i] - tm[j];
  return gcd(t0v, P) == 1;
}

bool qn_rp2(const QnFamily &F, const Int &y) {
  Int T0;
  auto tm = values_at(F, y, T0);
  for (std::size_t i = 0; i < tm.size(); ++i) {
    Int ti = as_int(F.t[i].eval(Rat(y)));
    if (gcd(ti, rp2_side(F, T0, tm, i)) != 1)
      return false;
  }
  return true;
}

bool QnAllYCertificate::holds() const {
  return rp1 && !rp2.empty() && std::all_of(rp2.begin(), rp2.end(), [](bool b) { return b; });
}

QnAllYCertificate qn_all_y_certificate(const QnFamily &F) {
  QnAllYCertificate C;
  std::vector<PolyRat> tm;
  for (const auto &tj : F.t)
    tm.push_back(ppow(tj, F.m));
  PolyRat T0 = ppow(F.t0(), F.m);
  PolyRat P = PolyRat::constant(1);
  for (std::size_t i = 0; i < tm.size(); ++i)
    for (std::size_t j = i + 1; j < tm.size(); ++j)
      P *= tm[i] - tm[j];
  std::string why;
  C.rp1 = coprime_for_all_y(F.t0_base, P, why);
  if (!C.rp1)
    C.detail = "rp1: " + why;
  for (std::size_t i = 0; i < tm.size(); ++i) {
    why.clear();
    bool ok = coprime_for_all_y(F.t[i], rp2_side(F, T0, tm, i), why);
    C.rp2.push_back(ok);
    if (!ok && C.detail.empty())
      C.detail = "rp2 at t_" + std::to_string(i + 1) + ": " + why;
  }
  return C;
}

PolyRat qn_discriminant(const QnFamily &F) {
  auto a = F.g_coefficients();
  const int n = static_cast<int>(a.size()) - 1;
  PolyOverPoly da;
  for (int k = 1; k <= n; ++k)
    da.push_back(a[k] * Rat(k));
  PolyRat R = resultant_in_y(a, da);
  auto [q, r] = divmod(R, a.back());
  if (!r.is_zero())
    throw Error("resultant not divisible by the leading coefficient");
  return (n * (n - 1) / 2) % 2 ? -q : q;
}

int qn_signature(const QnFamily &F, const Int &y) {
  int count = 0;
  if (!squarefree_signature(F, y, count))
    throw PreconditionError("g_y drops degree at y = " + exactmath::to_string(y));
  return count;
}

Int qn_threshold(const PolyRat &disc, const PolyRat &lead) {
  PolyRat h = disc * lead;
  if (h.is_zero())
    throw PreconditionError("discriminant vanishes identically");
  if (h.degree() <= 0)
    return Int(0);
  PolyRat s = h / poly_gcd(h, h.derivative());
  auto roots = isolate_real_roots(s, Rat(1));
  if (roots.empty())
    return Int(0);
  Rat hi = roots.back().second;
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  return f + 1;
}

bool qn_irreducible(const PolyRat &g0, int max_primes) {
  PolyRat g = g0.primitive_part();
  const int n = g.degree();
  if (n <= 1)
    return n == 1;
  std::set<int> possible;
  for (int d = 1; d < n; ++d)
    possible.insert(d);
  int used = 0;
  for (long p = 3; used < max_primes && p < 100000; p += 2) {
    if (!is_probable_prime(Int(p)) || mpz_divisible_ui_p(g.lead().get_num_mpz_t(), p))
      continue;
    PolyFp gp = PolyFp::from_rat(g, p);
    if (!is_squarefree_fp(gp))
      continue;
    ++used;
    std::set<int> sums{0};
    for (const auto &f : factor_fp(gp)) {
      std::set<int> next = sums;
      for (int s : sums)
        next.insert(s + f.factor.degree());
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int d : possible)
      if (sums.count(d))
        keep.insert(d);
    possible = std::move(keep);
    if (possible.empty())
      return true;
  }
  return false;
}

LogLogFit loglog_fit(const std::vector<std::pair<double, double>> &pts) {
  LogLogFit fit;
  const double k = static_cast<double>(pts.size());
  if (pts.size() < 2)
    return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto &[x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  double icpt = (sy - fit.slope * sx) / k;
  for (const auto &[x, y] : pts)
    fit.max_residual = std::max(fit.max_residual, std::fabs(y - (icpt + fit.slope * x)));
  return fit;
}

LogLogFit qn_discriminant_growth(const PolyRat &disc, const Int &from) {
  Rat b = root_bound(disc);
  Int base;
  mpz_cdiv_q(base.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  base = std::max(Int(base * 100), from);
  base = std::max(base, Int(10));
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; j <= 15; ++j) {
    Int y = base * static_cast<long>(std::llround(std::pow(10.0, j / 5.0) * 1000)) / 1000;
    Rat v = disc.eval(Rat(y));
    if (v == 0)
      continue;
    pts.push_back({log_abs(y), log_abs(v)});
  }
  return loglog_fit(pts);
}

bool QnReport::passed() const {
  return rp_failures == 0 && all_y.holds() && signature_at_threshold == family.r1 && signature_stable && growth_ok;
}

QnReport qn_verify(const QnFamily &F, long y_lo, long y_hi) {
  QnReport R;
  R.family = F;
  R.y_lo = y_lo;
  R.y_hi = y_hi;
  for (long y = y_lo; y <= y_hi; ++y) {
    Int Y(y);
    if (!qn_rp1(F, Y) || !qn_rp2(F, Y))
      ++R.rp_failures;
    if (!qn_irreducible(F.g_at(Y)))
      ++R.reducible;
  }
  R.all_y = qn_all_y_certificate(F);
  R.disc = qn_discriminant(F);
  R.threshold = qn_threshold(R.disc, F.g_coefficients().back());
  Int y0 = R.threshold;
  R.signature_at_threshold = qn_signature(F, y0);
  std::vector<Int> samples{y0, y0 + 1, y0 + 2, 2 * abs(y0) + 7, 10 * abs(y0) + 3, 100 * abs(y0) + 1};
  for (long y = std::max<long>(y_lo, y0.fits_slong_p() ? y0.get_si() : y_hi + 1); y <= y_hi; ++y)
    samples.push_back(Int(y));
  R.signature_stable = true;
  for (const auto &y : samples)
    if (y >= y0 && qn_signature(F, y) != R.signature_at_threshold)
      R.signature_stable = false;
  R.growth = qn_discriminant_growth(R.disc, std::max(y0, Int(1)));
  double E = static_cast<double>(F.growth_exponent);
  R.growth_ok = std::fabs(R.growth.slope - E) <= 0.05 * E;
  if (R.passed())
    R.conclusion = "preconditions certified";
  else if (!R.all_y.holds())
    R.conclusion = "preconditions not certified: " + R.all_y.detail;
  else
    R.conclusion = "preconditions not certified";
  return R;
}

QnFamily qn_param_search(unsigned long m, int n, int r1, const QnSearchBudget &budget) {
  QnFamily F = skeleton(m, n, r1);
  int tried = 0;
  auto exhausted = [&](const std::string &stage) {
    return BudgetExceeded("parameter search for (m, n, r1) = (" + std::to_string(m) + ", " + std::to_string(n) +
                          ", " + std::to_string(r1) + ") exhausted after " + std::to_string(tried) +
                          " candidates (" + stage + ")");
  };
  switch (F.kind) {
  case QnCase::one_or_two_real:
  case QnCase::three_real:
  case QnCase::no_real_odd_m: {
    // t0 = a y + 1 with a = rad(prod c_i prod (c_i^m - c_j^m)), t_i = c_i.
    for (auto c = first_subset(n, 1); tried < budget.max_candidates; ) {
      ++tried;
      Int P = 1, C = 1;
      for (int i = 0; i < n; ++i) {
        C *= c[i];
        for (int j = i + 1; j < n; ++j)
          P *= ipow(Int(c[i]), m) - ipow(Int(c[j]), m);
      }
      Int a = rad(P * C);
      QnFamily G = F;
      G.t0_base = lin(a, 1);
      G.t.clear();
      G.params = {{"a", a}, {"b", Int(1)}};
      for (int i = 0; i < n; ++i) {
        G.t.push_back(PolyRat::constant(Rat(c[i])));
        G.params.push_back({"c" + std::to_string(i + 1), Int(c[i])});
      }
      if (acceptable(G))
        return G;
      if (!next_subset(c, n + 12))
        break;
    }
    throw exhausted("constant t_i");
  }
  case QnCase::totally_real: {
    // t0 = a0 y + 1, t1 = a0 k y + k + 1, t_i = b_i; a0 collects every prime
    // that could divide both sides of rp1 or rp2.
    const Int beta = 1;
    for (auto b = first_subset(n - 1, 2); tried < budget.max_candidates; ) {
      for (long k = 2; k <= 40 && tried < budget.max_candidates; ++k) {
        ++tried;
        Int P = 1, prod_b = 1, prod_bm = 1;
        for (int i = 0; i < n - 1; ++i) {
          prod_b *= b[i];
          prod_bm *= ipow(Int(b[i]), m);
          P *= ipow(beta, m) - ipow(Int(b[i]), m);
          for (int j = i + 1; j < n - 1; ++j)
            P *= ipow(Int(b[i]), m) - ipow(Int(b[j]), m);
        }
        Int Q = ipow(-beta, m) + ((n - 1) % 2 ? -1 : 1) * ipow(Int(k), m) * prod_bm;
        if (P == 0 || Q == 0)
          continue;
        Int a0 = rad(P * prod_b * Q);
        if (gcd(Int(k) + beta, a0) != 1)
          continue;
        QnFamily G = F;
        G.t0_base = lin(a0, 1);
        G.t = {lin(a0 * k, Int(k) + beta)};
        G.params = {{"a0", a0}, {"b0", Int(1)}, {"M", a0 * k}, {"b1", Int(k) + beta}};
        for (int i = 0; i < n - 1; ++i) {
          G.t.push_back(PolyRat::constant(Rat(b[i])));
          G.params.push_back({"b" + std::to_string(i + 2), Int(b[i])});
        }
        if (acceptable(G))
          return G;
      }
      if (!next_subset(b, n + 12))
        break;
    }
    throw exhausted("r1 = n");
  }
  case QnCase::no_real_even_m: {
    // t0 = (a0 y + 1)^{n-1}, t_i = a0 k y + b_i.
    for (auto b = first_subset(n, 1); tried < budget.max_candidates; ) {
      for (long k = 1; k <= 40 && tried < budget.max_candidates; ++k) {
        if (std::find(b.begin(), b.end(), k) != b.end())
          continue;
        ++tried;
        Int P = 1, Qs = 1;
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j)
            P *= ipow(Int(b[i] - k), m) - ipow(Int(b[j] - k), m);
          Int prod = 1;
          for (int j = 0; j < n; ++j)
            if (j != i)
              prod *= ipow(Int(b[j] - b[i]), m);
          Qs *= ipow(Int(k - b[i]), m * (n - 1)) + ((n - 1) % 2 ? -1 : 1) * ipow(Int(k), m * (n - 1)) * prod;
        }
        if (P == 0 || Qs == 0)
          continue;
        Int a0 = rad(P * Qs);
        QnFamily G = F;
        G.t0_base = lin(a0, 1);
        G.t0_power = n - 1;
        G.t.clear();
        G.params = {{"a0", a0}, {"b0", Int(1)}, {"M", a0 * k}};
        for (int i = 0; i < n; ++i) {
          G.t.push_back(lin(a0 * k, Int(b[i])));
          G.params.push_back({"b" + std::to_string(i + 1), Int(b[i])});
        }
        if (acceptable(G))
          return G;
      }
      if (!next_subset(b, n + 12))
        break;
    }
    throw exhausted("m, n even, r1 = 0");
  }
  case QnCase::odd_middle:
  case QnCase::even_middle: {
    // t0 = (BMy + 1)^s, t_i = i B q y + a_i (i <= s), then p, p^2, ...
    const int s = F.kind == QnCase::odd_middle ? r1 - 2 : r1 - 3;
    const int np = n - s;
    for (long p : {2L, 3L, 5L}) {
      for (const auto &qq : small_primes(12, 5)) {
        long q = qq.get_si();
        if (q == p)
          continue;
        for (auto a = first_subset(s, 1); tried < budget.max_candidates; ) {
          // p^{mk} and a_i^m distinct and nonzero mod q.
          std::set<long> residues;
          bool distinct = true;
          for (int k = 1; k <= np && distinct; ++k) {
            Int r = ipow(Int(p), m * k) % q;
            distinct = r != 0 && residues.insert(r.get_si()).second;
          }
          for (int i = 0; i < s && distinct; ++i) {
            Int r = ipow(Int(a[i]), m) % q;
            distinct = r != 0 && residues.insert(r.get_si()).second;
          }
          for (long M = 10; distinct && M <= 100000 && tried < budget.max_candidates; M *= 10) {
            if (M % q == 0)
              continue;
            ++tried;
            std::vector<Rat> tstar;   // t_i at BMy = -1
            for (int i = 1; i <= s; ++i)
              tstar.push_back(Rat(a[i - 1]) - Rat(i * q, M));
            for (int k = 1; k <= np; ++k)
              tstar.push_back(Rat(ipow(Int(p), k)));
            Rat P0 = 1;
            for (std::size_t i = 0; i < tstar.size(); ++i)
              for (std::size_t j = i + 1; j < tstar.size(); ++j)
                P0 *= rpow(tstar[i], m) - rpow(tstar[j], m);
            Int B = rat_numerator_abs(P0);
            bool ok = B != 0;
            for (int i = 1; i <= s && ok; ++i) {
              // Values at the root of t_i: B M y = -a_i M / (i q).
              Rat t0s = rpow(Rat(1) - Rat(a[i - 1] * M, i * q), s);
              Rat prod = 1;
              for (int j = 1; j <= s; ++j)
                if (j != i)
                  prod *= rpow(Rat(a[j - 1]) - Rat(j * a[i - 1], i), m);
              for (int k = 1; k <= np; ++k)
                prod *= rpow(Rat(ipow(Int(p), k)), m);
              Rat Si = rpow(t0s, m) + ((n - 1) % 2 ? -1 : 1) * prod;
              Int Bi = rat_numerator_abs(Si);
              ok = Bi != 0 && gcd(Int(a[i - 1]), Bi) == 1;
              B *= Bi;
            }
            if (!ok || mpz_divisible_ui_p(B.get_mpz_t(), q))
              continue;
            QnFamily G = F;
            G.t0_base = lin(B * M, 1);
            G.t0_power = s;
            G.t.clear();
            G.params = {{"B", B}, {"M", Int(M)}, {"p", Int(p)}, {"q", Int(q)}};
            for (int i = 1; i <= s; ++i) {
              G.t.push_back(lin(Int(i) * B * q, Int(a[i - 1])));
              G.params.push_back({"a" + std::to_string(i), Int(a[i - 1])});
            }
            for (int k = 1; k <= np; ++k)
              G.t.push_back(PolyRat::constant(Rat(ipow(Int(p), k))));
            if (acceptable(G))
              return G;
          }
          if (!next_subset(a, s + 10))
            break;
        }
      }
    }
    throw exhausted("middle signature");
  }
  }
  throw exhausted("unknown case");
}

QnFamily qn_build(unsigned long m, int n, int r1) { return qn_param_search(m, n, r1); }

nlohmann::json to_json(const QnFamily &F) {
  nlohmann::json j;
  j["m"] = F.m;
  j["n"] = F.n;
  j["r1"] = F.r1;
  j["case"] = to_string(F.kind);
  j["e"] = F.e;
  j["sigma"] = F.sigma;
  j["t0_base"] = exactmath::to_json(F.t0_base);
  j["t0_power"] = F.t0_power;
  j["t"] = nlohmann::json::array();
  for (const auto &tj : F.t)
    j["t"].push_back(exactmath::to_json(tj));
  j["params"] = nlohmann::json::object();
  for (const auto &[k, v] : F.params)
    j["params"][k] = exactmath::to_json(v);
  j["growth_exponent"] = F.growth_exponent;
  return j;
}

nlohmann::json to_json(const QnReport &r) {
  nlohmann::json j;
  j["family"] = to_json(r.family);
  j["y_range"] = {r.y_lo, r.y_hi};
  j["rp_failures"] = r.rp_failures;
  j["reducible_fibres"] = r.reducible;
  j["rp_all_y"] = r.all_y.holds();
  if (!r.all_y.detail.empty())
    j["rp_all_y_detail"] = r.all_y.detail;
  j["disc_degree"] = r.disc.degree();
  j["threshold"] = exactmath::to_json(r.threshold);
  j["signature"] = r.signature_at_threshold;
  j["signature_stable"] = r.signature_stable;
  j["growth_slope"] = r.growth.slope;
  j["growth_residual"] = r.growth.max_residual;
  j["growth_ok"] = r.growth_ok;
  j["conclusion"] = r.conclusion;
  return j;
}

} // namespace classforge::constructions
