#include <doctest.h>

#include "classforge/error.hpp"
#include "classforge/quadclass/certificate.hpp"
#include "classforge/quadclass/class_group.hpp"
#include "classforge/quadclass/fund_disc.hpp"
#include "classforge/quadclass/ideal.hpp"
#include "classforge/quadclass/quad_form.hpp"

#include <deque>
#include <map>
#include <random>
#include <set>

using namespace classforge;
using namespace classforge::quadclass;
using exactmath::Int;

namespace {

QuadForm F(long a, long b, long c) { return {Int(a), Int(b), Int(c)}; }

// Breadth-first search over the SL2(Z) generators S and T^{+-1} until a
// form from the target set appears.
QuadForm orbit_search(const QuadForm &start, const std::set<QuadForm> &targets) {
  std::deque<QuadForm> q{start};
  std::set<QuadForm> seen{start};
  Int bound = 2 * (abs(start.b) + abs(start.a) + abs(start.c));
  while (!q.empty()) {
    QuadForm f = q.front();
    q.pop_front();
    if (targets.count(f))
      return f;
    QuadForm next[] = {{f.c, -f.b, f.a},
                       {f.a, f.b + 2 * f.a, f.a + f.b + f.c},
                       {f.a, f.b - 2 * f.a, f.a - f.b + f.c}};
    for (auto &g : next)
      if (abs(g.b) <= bound && seen.insert(g).second)
        q.push_back(g);
  }
  throw Error("orbit search failed");
}

std::vector<Int> fundamental_negatives(long lo) {
  std::vector<Int> out;
  for (long D = -3; D > lo; --D)
    if (is_fundamental_discriminant(Int(D)))
      out.push_back(Int(D));
  return out;
}

// Class index of a form among enumerated indefinite cycles.
std::map<QuadForm, int> cycle_index(const Int &D) {
  std::map<QuadForm, int> idx;
  int next = 0;
  for (const auto &f : reduced_forms_indefinite(D)) {
    if (idx.count(f))
      continue;
    QuadForm g = f;
    do {
      idx[g] = next;
      g = rho(g);
    } while (g != f);
    ++next;
  }
  return idx;
}

} // namespace

TEST_CASE("fundamental discriminants") {
  CHECK(fundamental_discriminant(-1).D == -4);
  CHECK(fundamental_discriminant(-1228544).D == -4799);
  CHECK(fundamental_discriminant(5).D == 5);
  CHECK(fundamental_discriminant(12).D == 12);
  CHECK(fundamental_discriminant(-3 * 49).D == -3);
  CHECK_THROWS_AS(fundamental_discriminant(49), PreconditionError);
  CHECK_THROWS_AS(fundamental_discriminant(0), PreconditionError);
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-8));
  CHECK_FALSE(is_fundamental_discriminant(-16));
  CHECK_FALSE(is_fundamental_discriminant(-12 * 4));
}

TEST_CASE("reduction against orbit search") {
  auto red = reduced_forms_definite(Int(-23));
  CHECK(red.size() == 3);
  std::set<QuadForm> rs(red.begin(), red.end());
  CHECK(orbit_search(F(3, 5, 4), rs) == F(2, 1, 3));
  CHECK(reduce(F(3, 5, 4)) == F(2, 1, 3));
  std::mt19937_64 rng(3);
  for (long D : {-23L, -47L, -71L, -84L, -260L}) {
    auto list = reduced_forms_definite(Int(D));
    std::set<QuadForm> set(list.begin(), list.end());
    for (const auto &f : list) {
      // Scramble by a random word in S, T and check reduction finds f again.
      QuadForm g = f;
      for (int i = 0; i < 6; ++i) {
        if (rng() % 2)
          g = {g.c, -g.b, g.a};
        long k = static_cast<long>(rng() % 5) - 2;
        g = {g.a, g.b + 2 * k * g.a, g.a * k * k + g.b * k + g.c};
      }
      CHECK(reduce(g) == f);
      CHECK(orbit_search(g, set) == f);
    }
  }
}

TEST_CASE("composition and powers") {
  Int D = -31;
  QuadForm p = principal_form(D);
  CHECK(p == F(1, 1, 8));
  for (const auto &f : reduced_forms_definite(D))
    CHECK(compose(p, f) == f);
  CHECK(power(F(2, 1, 4), 3) == F(1, 1, 8));
  CHECK(power(F(2, 1, 4), 0) == p);
  CHECK(power(F(2, 1, 4), -1) == F(2, -1, 4));
  CHECK_THROWS_AS(compose(F(1, 1, 6), F(1, 1, 8)), MismatchError);
}

TEST_CASE("group laws on all forms of small discriminants") {
  for (const auto &D : fundamental_negatives(-2000)) {
    auto forms = reduced_forms_definite(D);
    QuadForm p = principal_form(D);
    for (const auto &f : forms) {
      CHECK(is_principal(compose(f, opposite(f))));
      for (const auto &g : forms) {
        QuadForm fg = compose(f, g);
        CHECK(fg == compose(g, f));
        if (forms.size() <= 12)
          for (const auto &h : forms)
            CHECK(compose(fg, h) == compose(f, compose(g, h)));
      }
    }
  }
}

TEST_CASE("indefinite group laws") {
  for (long d = 5; d < 2000; ++d) {
    Int D(d);
    if (!is_fundamental_discriminant(D))
      continue;
    auto idx = cycle_index(D);
    std::vector<QuadForm> reps;
    std::set<int> seen;
    for (const auto &[f, i] : idx)
      if (seen.insert(i).second)
        reps.push_back(f);
    int id = idx.at(reduce(principal_form(D)));
    for (const auto &f : reps) {
      CHECK(idx.at(compose(principal_form(D), f)) == idx.at(reduce(f)));
      CHECK(idx.at(compose(f, opposite(f))) == id);
      CHECK(is_principal(compose(f, opposite(f))));
      for (const auto &g : reps) {
        CHECK(idx.at(compose(f, g)) == idx.at(compose(g, f)));
        for (const auto &h : reps)
          CHECK(idx.at(compose(compose(f, g), h)) == idx.at(compose(f, compose(g, h))));
      }
    }
    // Principality via the cycle walk agrees with the class index.
    for (const auto &[f, i] : idx)
      CHECK(is_principal(f) == (i == id));
  }
}

TEST_CASE("class groups") {
  CHECK(class_group(fund_disc_from_D(-23)).divisors == std::vector<Int>{3});
  CHECK(class_group(fund_disc_from_D(-4)).divisors.empty());
  CHECK(class_group(fund_disc_from_D(-47)).divisors == std::vector<Int>{5});
  CHECK(class_group(fund_disc_from_D(-420)).divisors == std::vector<Int>{2, 2, 2});
  CHECK(class_group(fund_disc_from_D(-3299)).divisors == std::vector<Int>{3, 9});
  CHECK(class_group(fund_disc_from_D(-4027)).divisors == std::vector<Int>{3, 3});
  // Narrow class groups: Q(sqrt 79) has h = 3 and a unit of norm +1;
  // Q(sqrt 229) has h = 3 and a unit of norm -1.
  CHECK(class_group(fund_disc_from_D(316)).divisors == std::vector<Int>{6});
  CHECK(class_group(fund_disc_from_D(229)).divisors == std::vector<Int>{3});
  CHECK(class_group(fund_disc_from_D(12)).divisors == std::vector<Int>{2});
  CHECK(class_group(fund_disc_from_D(5)).divisors.empty());
  EnumerationBound small{1000};
  CHECK_THROWS_AS(class_group(fund_disc_from_D(-4027), small), PreconditionError);
}

TEST_CASE("class number equals reduced form count; genus theory") {
  for (const auto &D : fundamental_negatives(-3000)) {
    FundDisc fd = fund_disc_from_D(D);
    auto G = class_group(fd);
    auto forms = reduced_forms_definite(D);
    CHECK(G.order() == static_cast<unsigned long>(forms.size()));
    CHECK(two_rank_genus(fd) == m_rank(G, 2));
    // Ambiguous reduced forms number 2^(t-1).
    long amb = 0;
    for (const auto &f : forms)
      if (f.b == 0 || f.b == f.a || f.a == f.c)
        ++amb;
    CHECK(amb == (1L << two_rank_genus(fd)));
  }
  CHECK(two_rank_genus(fund_disc_from_D(-4)) == 0);
  CHECK(two_rank_genus(fund_disc_from_D(-420)) == 3);
  CHECK(two_rank_genus(fund_disc_from_D(-23)) == 0);
}

TEST_CASE("m_rank") {
  CHECK(m_rank({{3, 3}}, 3) == 2);
  CHECK(m_rank({{6, 12}}, 6) == 2);
  CHECK(m_rank({{2, 4}}, 3) == 0);
  CHECK(m_rank({{2, 4}}, 4) == 1);
  CHECK(m_rank({{}}, 5) == 0);
  CHECK_THROWS_AS(m_rank({{3}}, 1), PreconditionError);
}

TEST_CASE("structure from orders matches direct products") {
  // Z/2 x Z/4 x Z/3: orders of all 24 elements.
  std::vector<Int> orders;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 3; ++c) {
        int oa = a ? 2 : 1, ob = b == 0 ? 1 : (b == 2 ? 2 : 4), oc = c ? 3 : 1;
        int o = std::lcm(std::lcm(oa, ob), oc);
        orders.push_back(Int(o));
      }
  CHECK(structure_from_orders(orders).divisors == std::vector<Int>{2, 12});
}

TEST_CASE("principality") {
  CHECK(is_principal(principal_form(Int(-23))));
  CHECK_FALSE(is_principal(F(2, 1, 3)));
  CHECK(is_principal(F(1, 1, -1)));
  CHECK(is_principal(principal_form(Int(229))));
  CHECK(is_principal(principal_form(Int(4000000028L))));
}

TEST_CASE("ideal classes from m-th powers") {
  FundDisc d31 = fund_disc_from_D(-31);
  QuadForm f = ideal_class_from_mth_power(2, 1, d31, 3);
  CHECK(f == F(2, 1, 4));
  CHECK_FALSE(is_principal(f));
  CHECK_FALSE(is_principal(power(f, 2)));
  CHECK(ideal_class_from_mth_power(1, 1, fund_disc_from_D(-3), 3) == principal_form(Int(-3)));
  // y^2 - 4x^m with a square factor: x = 3, y = 1, m = 3 gives -107.
  QuadForm g = ideal_class_from_mth_power(3, 1, fund_disc_from_D(-107), 3);
  CHECK(g.a == 3);
  CHECK(is_principal(power(g, 3)));
  CHECK_THROWS_AS(ideal_class_from_mth_power(2, 2, fund_disc_from_D(-7), 3), CertificateError);
  CHECK_THROWS_AS(ideal_class_from_mth_power(2, 1, fund_disc_from_D(-23), 3), MismatchError);
}

TEST_CASE("ideal HNF") {
  // (2, 1 + sqrt(-5)) in Z[sqrt(-5)]: the classic non-principal ideal.
  IdealHNF I = ideal_from_generators(Int(-20), {{4, 0}, {2, 1}});
  CHECK(I.content == 1);
  CHECK(I.primitive.a == 2);
  CHECK(I.norm() == 2);
  CHECK_FALSE(is_principal(form_from_ideal(I.primitive, Int(-20))));
  IdealHNF J = ideal_from_generators(Int(-20), {{6, 0}});
  CHECK(J.content == 3);
  CHECK(J.primitive.a == 1);
}

TEST_CASE("rank certificates") {
  CHECK(certify_m_rank({}, 3).rank() == 0);
  auto c = certify_m_rank({F(2, 1, 4)}, 3);
  CHECK(c.rank() == 1);
  CHECK(c.transcript.size() == 2);
  CHECK(verify_certificate(c));
  auto j = to_json(c);
  CHECK(verify_certificate(certificate_from_json(j)));
  CHECK(j["forms"][0][0] == "2");
  // Two classes generating the same cyclic group certify rank 1 only.
  CHECK(certify_m_rank({F(2, 1, 4), F(2, -1, 4)}, 3).rank() == 1);
  CHECK_THROWS_AS(certify_m_rank({F(2, 1, 3)}, 2), PreconditionError);
  // D = -4027 has class group Z/3 x Z/3.
  std::vector<QuadForm> three;
  for (const auto &f : reduced_forms_definite(Int(-4027)))
    if (!is_principal(f))
      three.push_back(f);
  auto c2 = certify_m_rank(three, 3);
  CHECK(c2.rank() == 2);
  CHECK(c2.transcript.size() == 8);
  CHECK(verify_certificate(c2));
  // Even m for real fields is refused.
  CHECK_THROWS_AS(certify_m_rank({principal_form(Int(12))}, 2), PreconditionError);
}

TEST_CASE("certificate rank never exceeds the class group m-rank") {
  std::mt19937_64 rng(17);
  for (const auto &D : fundamental_negatives(-3000)) {
    if (rng() % 8)
      continue;
    auto G = class_group(fund_disc_from_D(D));
    for (long m : {2L, 3L}) {
      std::vector<QuadForm> killed;
      for (const auto &f : reduced_forms_definite(D))
        if (is_principal(power(f, m)) && killed.size() < 5)
          killed.push_back(f);
      auto c = certify_m_rank(killed, m);
      CHECK(c.rank() <= m_rank(G, m));
    }
  }
  for (long d : {229L, 316L, 1129L, 2089L}) {
    FundDisc fd = fund_disc_from_D(Int(d));
    auto G = class_group(fd);
    std::vector<QuadForm> killed;
    auto idx = cycle_index(Int(d));
    std::set<int> seen;
    for (const auto &[f, i] : idx)
      if (seen.insert(i).second && is_principal(power(f, 3)))
        killed.push_back(f);
    CHECK(certify_m_rank(killed, 3).rank() == m_rank(G, 3));
  }
}

TEST_CASE("m-th power class with a negative-norm generator") {
  // Q(sqrt 33) has no unit of norm -1; alpha = (1 + sqrt 33)/2 has norm -8.
  FundDisc D = fund_disc_from_D(Int(33));
  QuadForm f = ideal_class_from_mth_power(Int(-2), Int(1), D, 3);
  CHECK(is_principal(power(f, Int(3))));
  QuadForm a = reduce(form_from_ideal(ideal_from_generators(D.D, {{Int(-4), Int(0)}, {Int(1), Int(1)}}).primitive, D.D));
  CHECK_FALSE(is_principal(power(a, Int(3))));
}
