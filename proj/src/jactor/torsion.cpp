#include "classforge/jactor/torsion.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/json_io.hpp"

#include <map>

namespace classforge::jactor {

using namespace exactmath;

namespace {

std::map<PolyFp, unsigned> multiplicities(const PolyFp &g) {
  std::map<PolyFp, unsigned> out;
  if (g.degree() <= 0)
    return out;
  for (const auto &fac : factor_fp(g))
    out[fac.factor] += fac.multiplicity;
  return out;
}

std::string describe(const PolyFp &pi, unsigned long mult, unsigned long m) {
  return "zero multiplicity " + std::to_string(mult) + " at " + pi.to_string() + " not divisible by " +
         std::to_string(m);
}

} // namespace

MumfordDivisor divisor_of_function(const HyperCurve &C, const PolyFp &a, const PolyFp &b, unsigned long m) {
  if (C.over_q())
    throw PreconditionError("divisor_of_function needs a curve over F_p");
  if (m < 1)
    throw PreconditionError("m must be positive");
  if (a.is_zero() && b.is_zero())
    throw PreconditionError("function is identically zero");
  const u64 p = C.p;
  const PolyFp &f = C.f_p;
  // Split off the x-only content c; div(c) is principal but its
  // multiplicities still have to add up correctly.
  PolyFp c = b.is_zero() ? a.monic() : (a.is_zero() ? b.monic() : poly_gcd(a, b));
  PolyFp a1 = a / c, b1 = b / c;
  std::map<PolyFp, unsigned long> weierstrass;
  for (const auto &[pi, e] : multiplicities(c)) {
    if ((f % pi).is_zero())
      weierstrass[pi] += 2ul * e;
    else if (e % m)
      throw CertificateError(describe(pi, e, m));
  }
  MumfordDivisor D = identity_divisor(C);
  if (!b1.is_zero()) {
    PolyFp norm = a1 * a1 - b1 * b1 * f;
    for (const auto &[pi, e] : multiplicities(norm)) {
      if ((f % pi).is_zero()) {
        weierstrass[pi] += e;
        continue;
      }
      if (e % m)
        throw CertificateError(describe(pi, e, m));
      PolyFp u = PolyFp::constant(p, 1);
      for (unsigned long i = 0; i < e / m; ++i)
        u *= pi;
      PolyFp v = (-(a1 * invmod(b1 % u, u))) % u;
      D = cantor_add(D, reduce_divisor({u, v}, C), C);
    }
  }
  for (const auto &[pi, e] : weierstrass) {
    if (e % m)
      throw CertificateError(describe(pi, e, m));
    MumfordDivisor W = reduce_divisor({pi, PolyFp(p)}, C);
    D = cantor_add(D, scalar_mul(Int(e / m), W, C), C);
  }
  if (!scalar_mul(Int(m), D, C).is_identity())
    throw Error("m times the divisor class is not principal");
  return D;
}

namespace {

std::vector<std::vector<unsigned>> all_vectors(std::size_t k, unsigned m) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> v(k, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < k && ++v[i] == m)
      v[i++] = 0;
    if (i == k)
      break;
  }
  return out;
}

std::vector<std::vector<MumfordDivisor>> multiples(const std::vector<MumfordDivisor> &divs, unsigned m,
                                                   const HyperCurve &C) {
  std::vector<std::vector<MumfordDivisor>> out;
  for (const auto &D : divs) {
    std::vector<MumfordDivisor> row{identity_divisor(C), D};
    for (unsigned e = 2; e <= m; ++e)
      row.push_back(cantor_add(row.back(), D, C));
    if (!row[m].is_identity())
      throw PreconditionError("class " + D.to_string() + " is not killed by m");
    row.pop_back();
    out.push_back(std::move(row));
  }
  return out;
}

MumfordDivisor combination(const std::vector<std::vector<MumfordDivisor>> &mult, const std::vector<unsigned> &v,
                           const HyperCurve &C) {
  MumfordDivisor D = identity_divisor(C);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i])
      D = cantor_add(D, mult[i][v[i]], C);
  return D;
}

unsigned checked_m(unsigned long m, std::size_t k) {
  if (m < 2)
    throw PreconditionError("torsion certificates need m >= 2");
  double combos = 1;
  for (std::size_t i = 0; i < k; ++i)
    combos *= static_cast<double>(m);
  if (combos > 2e5)
    throw PreconditionError("too many combinations to certify exhaustively");
  return static_cast<unsigned>(m);
}

} // namespace

TorsionCertificate certify_torsion_rank(const std::vector<MumfordDivisor> &divs, unsigned long m,
                                        const HyperCurve &C) {
  TorsionCertificate cert;
  cert.curve = C;
  cert.m = m;
  if (divs.empty())
    return cert;
  const std::size_t k = divs.size();
  unsigned mm = checked_m(m, k);
  if (k > 16)
    throw PreconditionError("at most 16 classes per certificate");
  auto mult = multiples(divs, mm, C);
  auto vecs = all_vectors(k, mm);
  std::vector<char> zero(vecs.size());
  for (std::size_t idx = 1; idx < vecs.size(); ++idx)
    zero[idx] = combination(mult, vecs[idx], C).is_identity();
  unsigned best_mask = 0;
  int best_size = 0;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best_size)
      continue;
    bool ok = true;
    for (std::size_t idx = 1; idx < vecs.size() && ok; ++idx) {
      bool inside = true;
      for (std::size_t i = 0; i < k; ++i)
        if (vecs[idx][i] && !(mask >> i & 1))
          inside = false;
      if (inside && zero[idx])
        ok = false;
    }
    if (ok) {
      best_mask = mask;
      best_size = size;
    }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (best_mask >> i & 1)
      cert.divisors.push_back(divs[i]);
  for (std::size_t idx = 1; idx < vecs.size(); ++idx) {
    bool inside = true;
    std::vector<unsigned> e;
    for (std::size_t i = 0; i < k; ++i) {
      if (vecs[idx][i] && !(best_mask >> i & 1))
        inside = false;
      if (best_mask >> i & 1)
        e.push_back(vecs[idx][i]);
    }
    if (inside)
      cert.transcript.push_back({e, static_cast<bool>(zero[idx])});
  }
  return cert;
}

bool verify_certificate(const TorsionCertificate &cert) {
  const HyperCurve &C = cert.curve;
  if (cert.divisors.empty())
    return cert.transcript.empty();
  try {
    for (const auto &D : cert.divisors)
      if (!is_reduced(D, C))
        return false;
    unsigned mm = checked_m(cert.m, cert.divisors.size());
    auto mult = multiples(cert.divisors, mm, C);
    auto vecs = all_vectors(cert.divisors.size(), mm);
    if (cert.transcript.size() != vecs.size() - 1)
      return false;
    for (std::size_t i = 1; i < vecs.size(); ++i) {
      const auto &t = cert.transcript[i - 1];
      if (t.exponents != vecs[i] || t.identity || combination(mult, vecs[i], C).is_identity())
        return false;
    }
  } catch (const PreconditionError &) {
    return false;
  }
  return true;
}

nlohmann::json to_json(const TorsionCertificate &cert) {
  nlohmann::json j;
  j["p"] = cert.curve.p;
  j["f"] = exactmath::to_json(cert.curve.f_p);
  j["m"] = cert.m;
  j["divisors"] = nlohmann::json::array();
  for (const auto &D : cert.divisors)
    j["divisors"].push_back({exactmath::to_json(D.u), exactmath::to_json(D.v)});
  j["rank"] = cert.rank();
  j["transcript"] = nlohmann::json::array();
  for (const auto &t : cert.transcript)
    j["transcript"].push_back({t.exponents, t.identity});
  return j;
}

TorsionCertificate torsion_certificate_from_json(const nlohmann::json &j) {
  TorsionCertificate c;
  u64 p = j.at("p").get<u64>();
  c.curve = curve_over_fp(polyfp_from_json(j.at("f"), p));
  c.m = j.at("m").get<unsigned long>();
  for (const auto &d : j.at("divisors"))
    c.divisors.push_back({polyfp_from_json(d.at(0), p), polyfp_from_json(d.at(1), p)});
  for (const auto &t : j.at("transcript"))
    c.transcript.push_back({t.at(0).get<std::vector<unsigned>>(), t.at(1).get<bool>()});
  return c;
}

} // namespace classforge::jactor
