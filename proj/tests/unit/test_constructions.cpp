#include <doctest.h>

#include "classforge/constructions/craig.hpp"
#include "classforge/constructions/craig4.hpp"
#include "classforge/constructions/family.hpp"
#include "classforge/constructions/mestre.hpp"
#include "classforge/constructions/qn.hpp"
#include "classforge/constructions/quadratic_families.hpp"
#include "classforge/constructions/ri.hpp"
#include "classforge/constructions/superelliptic.hpp"
#include "classforge/constructions/thlev2.hpp"
#include "classforge/error.hpp"
#include "classforge/exactmath/factor_int.hpp"
#include "classforge/quadclass/class_group.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace classforge;
using namespace classforge::constructions;
using exactmath::ipow;

namespace {

PolyRat P(std::initializer_list<long> c) {
  std::vector<Rat> v;
  for (long x : c)
    v.push_back(Rat(x));
  return PolyRat(v);
}

PolyRat K(long c) { return PolyRat::constant(Rat(c)); }

// Reduced primitive forms of D < 0, counted directly.
long class_number_brute(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a))
        continue;
      long c = (b * b - D) / (4 * a);
      if (c < a || (c == a && b < 0))
        continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) == 1)
        ++h;
    }
  return h;
}

bool craig_T_oracle(long s, long t) {
  if (std::gcd(3 * s, t) != 1 || s % 2)
    return false;
  for (long k = 1; k <= 4; k *= 2)
    if ((s + k * t) % 7 == 0)
      return false;
  return true;
}

CraigTwoSolution negated(const PolyRat &x0, const PolyRat &y0, const PolyRat &z0) {
  CraigTwoSolution s;
  s.x0 = x0;
  s.y0 = y0;
  s.z0 = z0;
  s.x1 = K(-1) * x0;
  s.y1 = K(-1) * y0;
  s.z1 = K(-1) * z0;
  s.x2 = s.x1;
  s.y2 = s.y1;
  s.z2 = s.z1;
  return s;
}

// Count of real roots by sign changes on a fine exact grid over the Cauchy bound.
int sign_changes_on_grid(const PolyRat &g, int steps) {
  Rat B = 1;
  for (int i = 0; i < g.degree(); ++i)
    B = std::max(B, Rat(Rat(1) + abs(g.coeff(i) / g.lead())));
  int changes = 0, last = 0;
  for (int k = 0; k <= steps; ++k) {
    Rat x = -B + Rat(2 * k) * B / steps;
    Rat v = g.eval(x);
    int s = sgn(v);
    if (s != 0 && last != 0 && s != last)
      ++changes;
    if (s != 0)
      last = s;
  }
  return changes;
}

} // namespace

TEST_CASE("degree-24 form at printed points") {
  CHECK(craig_F_value(Int(1), Int(2)) == Int(-1228544));
  CHECK(craig_F_value(Int(0), Int(1)) == Int(1));
  CHECK(craig_identity_check());
}

TEST_CASE("membership in T agrees with direct gcd checks") {
  CHECK_FALSE(craig_T(Int(1), Int(2)));
  CHECK(craig_T(Int(2), Int(1)));
  CHECK(craig_T(Int(2), Int(7)));
  for (long s = -20; s <= 20; ++s)
    for (long t = -20; t <= 20; ++t)
      CHECK(craig_T(Int(s), Int(t)) == craig_T_oracle(s, t));
}

TEST_CASE("Craig torsion certificate mod one prime") {
  auto certs = craig_torsion_certificates(1);
  REQUIRE(certs.size() == 1);
  CHECK(certs[0].certificate.divisors.size() == 3);
  CHECK(jactor::verify_certificate(certs[0].certificate));
}

TEST_CASE("Nagell points against class number enumeration") {
  auto r = nagell_point(Int(2), Int(1), 3);
  REQUIRE(r.field);
  CHECK(r.field->D == Int(-31));
  CHECK(class_number_brute(-31) == 3);
  CHECK(r.certified());

  auto small = nagell_point(Int(1), Int(1), 3);
  CHECK(small.exceptional());

  for (long D : {-23L, -31L, -59L, -83L, -107L, -139L})
    CHECK(quadclass::class_group(quadclass::fund_disc_from_D(Int(D))).order() == Int(class_number_brute(D)));
}

TEST_CASE("Yamamoto congruence conditions") {
  // Cubes mod 7 are {0, 1, 6}.
  std::set<long> cubes;
  for (long a = 0; a < 7; ++a)
    cubes.insert(a * a * a % 7);
  CHECK(cubes == std::set<long>{0, 1, 6});
  CHECK(yamamoto_conditions(Int(7), Int(2), 3, {Int(7)}));
  CHECK_FALSE(yamamoto_conditions(Int(7), Int(6), 3, {Int(7)}));
  for (long x = 2; x < 12; ++x)
    CHECK_FALSE(yamamoto_conditions(Int(x), Int(1), 3, {Int(7)}));

  auto r = nagell_point(Int(7), Int(2), 3);
  REQUIRE(r.field);
  CHECK(r.field->D == Int(-152));
  CHECK(r.certified());
}

TEST_CASE("ternary form identity and excluded field") {
  CHECK(ternary_identity_check(3));
  CHECK(ternary_identity_check(5));
  CHECK(ternary_value(Int(1), Int(1), Int(1), 3) == Int(-3));
  CHECK(ternary_point(Int(1), Int(1), Int(1), 3).exceptional());
}

TEST_CASE("ternary triples with negative value certify or are flagged") {
  auto pts = ternary_points(3, 7);
  std::vector<std::array<Int, 3>> neg;
  for (const auto &p : pts)
    if (ternary_value(p[0], p[1], p[2], 3) < 0)
      neg.push_back(p);
  REQUIRE(neg.size() >= 6);
  std::mt19937_64 rng(11);
  std::shuffle(neg.begin(), neg.end(), rng);
  for (std::size_t k = 0; k < 6; ++k) {
    auto r = ternary_point(neg[k][0], neg[k][1], neg[k][2], 3);
    if (r.certified()) {
      CHECK(r.certified_rank >= 2);
      CHECK(verify_result(r));
    } else {
      CHECK(r.exceptional());
    }
  }
}

TEST_CASE("(Y-a)(Y-b) = X^m (Y-c) curve construction") {
  Rat a(0), b(-7);
  Rat c = ri_slice_c(a, b);
  RiCurve C = ri_curve(3, a, b, c);
  CHECK(C.genus() == 2);
  CHECK(C.d == -1 - C.e * C.e);
  CHECK(C.even_model.eval(Rat(1)) == 0);
  CHECK(C.odd.curve.genus == 2);

  CHECK_THROWS_AS(ri_curve(3, a, a, c), PreconditionError);
  // e = 1 forces d^2 = 4e^2 on the slice.
  CHECK_THROWS_AS(ri_curve(3, Rat(1), Rat(0), ri_slice_c(Rat(1), Rat(0))), PreconditionError);
  CHECK_THROWS_AS(ri_curve(3, a, b, c + 1), PreconditionError);

  CHECK_THROWS_AS(ri_torsion_at(C, 7), PreconditionError);
  auto certs = ri_torsion_certificates(C, 1);
  REQUIRE(certs.size() == 1);
  const auto &T = certs[0];
  CHECK(T.certificate.divisors.size() == 2);
  CHECK(jactor::verify_certificate(T.certificate));
}

TEST_CASE("(Y-a)(Y-b) class family points certify rank 2") {
  int certified = 0;
  for (const auto &[X, Z] : ri_class_points(3, 12)) {
    auto r = ri_class_point(3, X, Z);
    if (!r.certified())
      continue;
    ++certified;
    REQUIRE(r.field);
    auto G = quadclass::class_group(*r.field);
    CHECK(quadclass::m_rank(G, Int(3)) >= 2);
  }
  CHECK(certified >= 3);
}

TEST_CASE("Kubert curve and its order-10 point") {
  auto E = kubert_curve(Rat(2));
  CHECK(E.P.x == Rat(-5, 4));
  CHECK(E.P.y == Rat(-135, 4));
  CHECK(E.g.eval(E.P.x) == E.P.y * E.P.y);
  CHECK(verify_order_ten(Rat(2)));
  CHECK(kubert_generic_check());
  CHECK_THROWS_AS(kubert_curve(Rat(0)), PreconditionError);
  CHECK_THROWS_AS(kubert_curve(Rat(1)), PreconditionError);
}

TEST_CASE("Mestre triple, invariance and genus-5 model") {
  auto T = mestre_triple(Rat(2));
  CHECK(T.u1 == Rat(5, 7));
  CHECK(T.u2 == Rat(-11, 7));
  CHECK(T.u3 == Rat(-1, 7));
  CHECK(T.common == Rat(55, 343));
  for (const Rat &u : {T.u1, T.u2, T.u3})
    CHECK(u * (u * u + u - 1) == T.common);
  CHECK(mestre_invariance_check());

  auto R = mestre_check(Rat(2), {7, 11, 13});
  CHECK(R.model.parametrization_holds);
  CHECK(R.genus_five);
  CHECK(R.three_rational_roots);
  CHECK(R.all_divisible);
  bool direct_seen = false;
  for (const auto &p : R.primes)
    if (p.direct_order) {
      direct_seen = true;
      CHECK(*p.direct_order == p.jacobian_order);
    }
  CHECK(direct_seen);
}

TEST_CASE("superelliptic fibres") {
  PolyRat f = P({3, 0, 0, 0, 0, -1});
  auto F = super_family(2, f, 3);
  for (long i : {25L, 50L, 120L}) {
    Rat x = Rat(Int(i) * F.M + 1, F.M);
    Rat v = f.eval(x);
    auto r = super_specialize(F, Int(i));
    REQUIRE(r.field);
    CHECK(sgn(r.field->D) == sgn(v));
    CHECK(r.field->D < 0);
    for (const auto &p : F.primes)
      CHECK(r.field->D % p == 0);
  }

  std::vector<std::pair<double, double>> pts;
  for (long i = 10; i <= 200; ++i)
    pts.push_back({std::log(double(i)), std::log(std::fabs(super_specialize(F, Int(i)).field->D.get_d()))});
  CHECK(std::fabs(loglog_fit(pts).slope - 5.0) <= 0.25);

  auto F3 = super_family(3, f, 3);
  auto S3 = super_field(F3, Int(40));
  CHECK(S3.degree_n);
  CHECK(S3.real_places == 1);
  CHECK(S3.unit_rank == 1);
  for (const auto &w : S3.witnesses)
    CHECK(w.holds);

  auto F4 = super_family(4, f, 3);
  CHECK(super_field(F4, Int(40)).real_places == 0);
  CHECK_THROWS_AS(super_family(5, f, 3), PreconditionError);
}

TEST_CASE("Brumer-Rosen membership and genus cross-check") {
  std::vector<LinearFactor> consecutive{{Int(1), Int(0)}, {Int(1), Int(1)}};
  std::vector<LinearFactor> gap_two{{Int(1), Int(0)}, {Int(1), Int(2)}};
  for (long x = -50; x <= 50; ++x) {
    CHECK(brumer_rosen_T(consecutive, Int(x)));
    CHECK(brumer_rosen_T(gap_two, Int(x)) == (x % 2 != 0));
  }

  std::vector<LinearFactor> f{{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(2), Int(1)}};
  int checked = 0;
  for (long x = -60; x < -1; ++x) {
    auto r = brumer_rosen_check(2, f, Int(x));
    if (!r.certified())
      continue;
    ++checked;
    REQUIRE(r.field);
    auto fac = exactmath::factor_int(abs(r.field->D));
    REQUIRE(fac.complete);
    CHECK(static_cast<int>(fac.factors.size()) - 1 >= 1);
    CHECK(quadclass::two_rank_genus(*r.field) >= 1);
    CHECK(verify_result(r));
  }
  CHECK(checked >= 10);
}

TEST_CASE("signature family case table") {
  CHECK(qn_case(3, 5, 5) == QnCase::totally_real);
  CHECK(qn_growth_exponent(3, 5, 5) == 24);
  CHECK(qn_growth_exponent(2, 4, 2) == 8);
  CHECK(qn_growth_exponent(2, 5, 3) == 10);
  CHECK(qn_case(3, 3, 1) == QnCase::one_or_two_real);
  CHECK(qn_case(2, 4, 0) == QnCase::no_real_even_m);
  CHECK(qn_case(3, 4, 0) == QnCase::no_real_odd_m);
}

TEST_CASE("signature family parameters pass direct gcd checks") {
  QnFamily F = qn_build(2, 4, 2);
  for (long y = 1; y <= 100; ++y) {
    Rat Y(y);
    std::vector<Int> t, tm;
    for (const auto &ti : F.t) {
      t.push_back(ti.eval(Y).get_num());
      tm.push_back(ipow(t.back(), F.m));
    }
    Int t0 = F.t0().eval(Y).get_num();
    Int T0 = ipow(t0, F.m);
    Int Pr = 1;
    for (std::size_t i = 0; i < tm.size(); ++i)
      for (std::size_t j = i + 1; j < tm.size(); ++j)
        Pr *= tm[i] - tm[j];
    CHECK(gcd(t0, Pr) == 1);
    for (std::size_t i = 0; i < tm.size(); ++i) {
      Int prod = F.sigma;
      for (std::size_t j = 0; j < tm.size(); ++j)
        if (j != i)
          prod *= tm[i] - tm[j];
      Int side = F.e * ipow(tm[i], static_cast<unsigned long>(F.e - 1)) * T0 + prod;
      CHECK(gcd(t[i], side) == 1);
    }
    CHECK(qn_rp1(F, Int(y)));
    CHECK(qn_rp2(F, Int(y)));
  }
}

TEST_CASE("signature family real roots above the threshold") {
  QnFamily F = qn_build(3, 3, 1);
  Int y0 = qn_threshold(qn_discriminant(F), F.g_coefficients().back());
  Int start = std::max(y0, Int(1));
  for (int k = 0; k < 4; ++k) {
    Int y = start + k;
    CHECK(qn_signature(F, y) == 1);
    CHECK(sign_changes_on_grid(F.g_at(y), 4000) == 1);
  }
  QnReport R = qn_verify(qn_build(2, 4, 2), 1, 30);
  CHECK(R.passed());
  CHECK(R.conclusion == "preconditions certified");
}

TEST_CASE("series-root map: r selection matches a direct scan") {
  CHECK(thlev2_select_r(2, 3) == 5);
  CHECK(thlev2_bound_holds(2, 3, 5));
  for (unsigned long m = 2; m <= 4; ++m)
    for (int n = static_cast<int>((m - 1) * (m - 1)) + 1; n <= 12; ++n) {
      long best = 0;
      for (long r = 1; r <= 3 * n + 3; ++r)
        if (r - r / static_cast<long>(m) <= n && std::gcd(r, static_cast<long>(m)) == 1)
          best = r;
      CHECK(thlev2_select_r(m, n) == best);
      CHECK(double(best) >= n + double(n) / double(m - 1) - double(m) + 1 - 1e-9);
    }
  CHECK_THROWS_AS(thlev2_build(3, 4), PreconditionError);
}

TEST_CASE("series-root map: m-th root and map degree") {
  for (auto [m, n] : {std::pair{2ul, 3}, std::pair{3ul, 7}, std::pair{4ul, 11}}) {
    auto F = thlev2_build(m, n);
    CHECK(F.series_holds());
    Int h0 = 1;
    for (const auto &a : F.a)
      h0 *= a;
    CHECK(F.h.eval(Rat(0)) == Rat(h0));
    // Fibre over i by direct expansion: (b h + i x^{r-n})^m - b^m g.
    PolyRat xs = K(5);
    for (int k = 0; k < F.r - F.n; ++k)
      xs = xs * PolyRat::x();
    PolyRat lhs = K(1), base = PolyRat::constant(Rat(F.b)) * F.h + xs;
    for (unsigned long k = 0; k < m; ++k)
      lhs = lhs * base;
    PolyRat E = lhs - PolyRat::constant(Rat(ipow(F.b, m))) * F.g;
    int ord = 0;
    while (E.coeff(ord) == 0)
      ++ord;
    CHECK(E.degree() - ord == n);
    CHECK(thlev2_map_degree(F, Int(5)) == n);
  }
}

TEST_CASE("Craig-2 identity checker") {
  PolyRat t = PolyRat::x();
  auto good = negated(t, t + K(1), K(2) * t - K(3));
  CHECK(craig4_check(good));

  auto bad = good;
  bad.x1 = good.x0;
  bad.z1 = good.z0;
  bad.y1 = good.y0 + K(1);
  auto report = craig4_report(bad);
  CHECK_FALSE(craig4_check(bad));
  CHECK(report[0].holds);
  CHECK_FALSE(report[2].holds);

  auto round = craig4_from_json(to_json(good));
  CHECK(round.z0 == good.z0);
  CHECK(craig4_check(round));
  CHECK_THROWS_AS(craig4_from_json(nlohmann::json{{"x0", {1}}}), PreconditionError);
}

TEST_CASE("Craig-2 torsion path on a supplied h") {
  auto s = negated(PolyRat::x(), PolyRat::x(), K(1));
  PolyRat h = craig4_h(s);
  CHECK(h == P({1, 0, 0, -4}));
  auto T = craig4_torsion_at(s, h, 7);
  CHECK(T.divisors.size() == 4);
  CHECK(jactor::verify_certificate(T.certificate));
  // Genus 1: the 3-torsion has rank at most 2.
  CHECK(T.certificate.divisors.size() <= 2);
  CHECK_THROWS_AS(craig4_torsion_at(s, h + K(1), 7), MismatchError);
}

TEST_CASE("family specs round-trip through JSON") {
  for (FamilyTag tag : all_family_tags()) {
    FamilyParams p;
    p.lo = 2;
    p.hi = 9;
    p.N = 7;
    if (tag == FamilyTag::superelliptic)
      p.f = P({3, 0, 0, 0, 0, -1});
    if (tag == FamilyTag::brumer_rosen)
      p.factors = {{Int(1), Int(0)}, {Int(1), Int(1)}};
    if (tag == FamilyTag::craig4_checker)
      p.solution = negated(PolyRat::x(), K(1), K(2));
    if (tag == FamilyTag::qn) {
      p.m = 2;
      p.n = 4;
      p.r1 = 2;
    }
    if (tag == FamilyTag::thlev2)
      p.n = 7;
    FamilySpec s = family_spec(tag, p);
    FamilySpec back = family_spec_from_json(to_json(s));
    CHECK(to_json(back) == to_json(s));
    CHECK(family_tag_from_string(to_string(tag)) == tag);
  }
  CHECK_THROWS_AS(family_tag_from_string("nope"), PreconditionError);
  FamilyParams bad;
  bad.n = 4;
  bad.m = 3;
  CHECK_THROWS_AS(family_spec(FamilyTag::thlev2, bad), PreconditionError);
}

TEST_CASE("family subsampling is deterministic") {
  FamilyParams p;
  p.m = 3;
  p.N = 20;
  p.sample = 15;
  p.seed = 5;
  Family a(family_spec(FamilyTag::nagell_yamamoto, p), false);
  Family b(family_spec(FamilyTag::nagell_yamamoto, p), false);
  CHECK(a.points() == b.points());
  CHECK(a.points().size() == 15);
  CHECK_THROWS_AS(a.specialize(a.points().front()), Error);
}
