#include "classforge/constructions/superelliptic.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/jactor/curve.hpp"
#include "classforge/quadclass/certificate.hpp"
#include "classforge/quadclass/class_group.hpp"
#include "classforge/quadclass/ideal.hpp"

#include <algorithm>
#include <set>

namespace classforge::constructions {

using namespace exactmath;

namespace {

// (alpha, beta) with t alpha - n beta = 1.
std::pair<long, long> bezout(long t, long n) {
  for (long a = 0; a < n; ++a)
    if ((t * a - 1) % n == 0)
      return {a, (t * a - 1) / n};
  throw PreconditionError("deg f and n must be coprime");
}

long ord(const Int &p, Int v) {
  long e = 0;
  while (v != 0 && mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    v /= p;
    ++e;
  }
  return e;
}

long ord(const Int &p, const Rat &q) { return ord(p, q.get_num()) - ord(p, q.get_den()); }

bool is_perfect_power(const Int &v, unsigned long d) {
  Int r;
  if (v < 0) {
    if (d % 2 == 0)
      return false;
    return mpz_root(r.get_mpz_t(), Int(-v).get_mpz_t(), d) != 0;
  }
  return mpz_root(r.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

// Capelli: x^n - a is irreducible over Q iff a is not a d-th power for any
// prime d | n and, when 4 | n, a is not -4 b^4.
bool binomial_irreducible(const Int &a, int n) {
  if (a == 0)
    return false;
  for (const auto &[d, e] : factor_int(Int(n)).factors) {
    (void)e;
    if (is_perfect_power(a, d.get_ui()))
      return false;
  }
  if (n % 4 == 0 && a < 0 && mpz_divisible_ui_p(a.get_mpz_t(), 4) && is_perfect_power(-a / 4, 4))
    return false;
  return true;
}

PolyRat rescale(const PolyRat &f, const Rat &lambda, const Rat &mu, int n) {
  // mu^n f(X / lambda)
  std::vector<Rat> c(f.degree() + 1);
  Rat mun = rpow(mu, n);
  for (int i = 0; i <= f.degree(); ++i)
    c[i] = f.coeff(i) * mun / rpow(lambda, i);
  return PolyRat(c);
}

} // namespace

SuperFamily super_family(int n, const PolyRat &f, unsigned long m) {
  if (n < 2)
    throw PreconditionError("n must be at least 2");
  if (m < 2)
    throw PreconditionError("m must be at least 2");
  const int t = f.degree();
  if (t < 1 || std::gcd(t, n) != 1)
    throw PreconditionError("gcd(deg f, n) must be 1");
  if (!is_squarefree(f))
    throw PreconditionError("f is not squarefree");
  SuperFamily F;
  F.n = n;
  F.m = m;
  // Lead -> -1 via x = X / c^alpha, y = Y / c^beta with t alpha - n beta = 1.
  Rat c = -f.lead();
  auto [alpha, beta] = bezout(t, n);
  PolyRat g = rescale(f, rpow(c, alpha), rpow(c, beta), n);
  // Clear denominators with x = X / L^n, y = Y / L^t.
  // L = prod p^e, e the least with n (t - i) e >= ord_p(den a_i) for all i.
  Int L = 1, dens = 1;
  for (const auto &q : g.coeffs())
    dens = lcm(dens, q.get_den());
  for (const auto &[p, e0] : factor_int(dens).factors) {
    (void)e0;
    long e = 0;
    for (int i = 0; i < t; ++i) {
      long need = ord(p, g.coeff(i).get_den());
      long step = static_cast<long>(n) * (t - i);
      e = std::max(e, (need + step - 1) / step);
    }
    L *= ipow(p, e);
  }
  g = rescale(g, Rat(ipow(L, n)), Rat(ipow(L, t)), n);
  if (g.lead() != -1)
    throw Error("rescaling did not produce leading coefficient -1");
  F.f = g;
  std::set<Int> ps;
  for (const auto &p : jactor::bad_primes(g))
    ps.insert(p);
  for (const auto &[p, e] : factor_int(Int(static_cast<long>(m * n))).factors) {
    (void)e;
    ps.insert(p);
  }
  F.primes.assign(ps.begin(), ps.end());
  F.M = 1;
  for (const auto &p : F.primes)
    F.M *= p;
  Int bound = 0;
  for (const auto &q : g.coeffs())
    bound = std::max(bound, Int(abs(q.get_num())));
  F.negative_from = bound + 1;
  return F;
}

SuperField super_field(const SuperFamily &F, const Int &i) {
  const int t = F.f.degree();
  SuperField S;
  S.i = i;
  S.value = F.f.eval(Rat(i * F.M + 1, F.M));
  long k = (t + F.n - 1) / F.n;
  Rat scaled = S.value * Rat(ipow(F.M, F.n * k));
  if (scaled.get_den() != 1)
    throw Error("scaled fibre value is not integral");
  S.radicand = scaled.get_num();
  auto [bi, bj] = bezout(F.n, t);
  for (const auto &p : F.primes) {
    RamificationWitness w;
    w.p = p;
    w.ord = ord(p, S.value);
    w.i = bi;
    w.j = bj;
    // ord_p(M^i a^{j/n}) = i + j ord / n = 1/n  <=>  n i + j ord = 1.
    w.holds = F.n * bi + bj * w.ord == 1;
    S.witnesses.push_back(w);
  }
  S.degree_n = binomial_irreducible(S.radicand, F.n);
  if (F.n % 2)
    S.real_places = 1;
  else
    S.real_places = S.radicand > 0 ? 2 : 0;
  int r2 = (F.n - S.real_places) / 2;
  S.unit_rank = S.real_places + r2 - 1;
  return S;
}

SpecializationResult super_specialize(const SuperFamily &F, const Int &i) {
  SpecializationResult r;
  r.point = {i};
  SuperField S = super_field(F, i);
  bool witnesses = std::all_of(S.witnesses.begin(), S.witnesses.end(), [](const auto &w) { return w.holds; });
  r.note = "x^" + std::to_string(F.n) + " - (" + exactmath::to_string(S.radicand) + ")";
  if (!S.degree_n || !witnesses) {
    r.outcome = Outcome::exceptional;
    r.note += !S.degree_n ? ": degree dropped" : ": ramification witness failed";
    return r;
  }
  if (F.n == 2) {
    try {
      r.field = quadclass::fundamental_discriminant(S.radicand);
    } catch (const BudgetExceeded &e) {
      r.outcome = Outcome::incomplete;
      r.note += std::string(": ") + e.what();
      return r;
    }
    for (const auto &p : F.primes)
      if (!mpz_divisible_p(r.field->D.get_mpz_t(), p.get_mpz_t()))
        throw Error("prime " + exactmath::to_string(p) + " of M is unramified in the fibre field");
  }
  r.outcome = Outcome::certified;
  r.note += ": degree " + std::to_string(F.n) + ", primes of M totally ramified, unit rank " +
            std::to_string(S.unit_rank);
  return r;
}

SpecializationResult super_specialize(int n, const PolyRat &f, unsigned long m, const Int &i) {
  return super_specialize(super_family(n, f, m), i);
}

Int linear_product(const std::vector<LinearFactor> &f, const Int &x) {
  Int v = 1;
  for (const auto &[a, b] : f)
    v *= a * x - b;
  return v;
}

bool brumer_rosen_T(const std::vector<LinearFactor> &f, const Int &x) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (gcd(Int(f[i].first * x - f[i].second), Int(f[j].first * x - f[j].second)) != 1)
        return false;
  return true;
}

SpecializationResult brumer_rosen_check(int n, const std::vector<LinearFactor> &f, const Int &x) {
  if (n < 2)
    throw PreconditionError("n must be at least 2");
  const int r = static_cast<int>(f.size());
  std::set<Rat> roots;
  for (const auto &[a, b] : f) {
    if (a == 0)
      throw PreconditionError("linear factors need a != 0");
    roots.insert(Rat(b, a));
  }
  if (static_cast<int>(roots.size()) != r)
    throw PreconditionError("f must have distinct roots");
  SpecializationResult res;
  res.point = {x};
  Int v = linear_product(f, x);
  if (!brumer_rosen_T(f, x) || !binomial_irreducible(v, n)) {
    res.outcome = Outcome::exceptional;
    res.note = v == 0 ? "f(x) = 0" : (brumer_rosen_T(f, x) ? "degree dropped" : "x not in T");
    return res;
  }
  if (n != 2) {
    res.outcome = Outcome::incomplete;
    res.note = "preconditions certified: pairwise coprime factors are n-th powers of ideals";
    return res;
  }
  try {
    res.field = quadclass::fundamental_discriminant(v);
  } catch (const BudgetExceeded &e) {
    res.outcome = Outcome::incomplete;
    res.note = e.what();
    return res;
  }
  const quadclass::FundDisc &K = *res.field;
  int genus = quadclass::two_rank_genus(K);
  res.target_rank = r - (K.imaginary() ? 0 : 1) - 1;
  if (!K.imaginary()) {
    res.outcome = Outcome::incomplete;
    res.note = "real field: genus 2-rank " + std::to_string(genus) + ", wide 2-rank not certified";
    return res;
  }
  // sqrt(v) = s sqrt(d) as (X + Y sqrt(D)) / 2.
  Int s2 = v / K.d, s;
  mpz_sqrt(s.get_mpz_t(), s2.get_mpz_t());
  quadclass::QuadElement root{0, K.D == K.d ? Int(2 * s) : s};
  std::vector<quadclass::QuadForm> classes;
  for (int j = 0; j + 1 < r; ++j) {
    Int Nj = f[j].first * x - f[j].second;
    auto I = quadclass::ideal_from_generators(K.D, {{2 * Nj, 0}, root});
    classes.push_back(quadclass::form_from_ideal(I.primitive, K.D));
  }
  auto cert = quadclass::certify_m_rank(classes, 2);
  if (cert.rank() > genus)
    throw Error("certified 2-rank exceeds the genus-theory 2-rank");
  res.certified_rank = cert.rank();
  res.class_certificates.push_back(cert);
  res.outcome = res.certified_rank >= res.target_rank ? Outcome::certified : Outcome::exceptional;
  res.note = "genus 2-rank " + std::to_string(genus);
  if (res.outcome == Outcome::exceptional)
    res.note += "; certified rank " + std::to_string(res.certified_rank) + " below target " +
                std::to_string(res.target_rank);
  return res;
}

} // namespace classforge::constructions
