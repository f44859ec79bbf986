#ifndef CLASSFORGE_CONSTRUCTIONS_SUPERELLIPTIC_HPP
#define CLASSFORGE_CONSTRUCTIONS_SUPERELLIPTIC_HPP

#include "classforge/constructions/specialization.hpp"

#include <utility>
#include <vector>

namespace classforge::constructions {

/* y^n = f(x) with gcd(deg f, n) = 1, rescaled to integral coefficients and
 * leading coefficient -1. Fibres of x - 1/M over the integers i give the
 * fields Q((f((iM + 1)/M))^{1/n}), in which every prime of M is totally
 * ramified. */
struct SuperFamily {
  int n = 0;
  unsigned long m = 0;
  PolyRat f;                 // integral, lead -1
  std::vector<Int> primes;   // primes of M: bad primes of f and primes of m n
  Int M;
  Int negative_from;         // f((iM + 1)/M) < 0 for all i >= negative_from
};
// Throws PreconditionError when gcd(deg f, n) != 1, n < 2 or f not squarefree.
SuperFamily super_family(int n, const PolyRat &f, unsigned long m);

struct RamificationWitness {
  Int p;
  long ord = 0;        // ord_p of the fibre value, expected -deg f
  long i = 0, j = 0;   // n i - t j = 1
  bool holds = false;  // ord_p(M^i a^{j/n}) = 1/n
};

struct SuperField {
  Int i;
  Rat value;                 // f((iM + 1)/M)
  Int radicand;              // value * M^{n k}, integral
  std::vector<RamificationWitness> witnesses;
  bool degree_n = false;     // x^n - radicand irreducible
  int real_places = 0;
  int unit_rank = 0;
};
SuperField super_field(const SuperFamily &F, const Int &i);

// n = 2: fundamental discriminant plus ramification witnesses (each prime
// of M must divide D). n > 2: presentation and witnesses only.
SpecializationResult super_specialize(const SuperFamily &F, const Int &i);
SpecializationResult super_specialize(int n, const PolyRat &f, unsigned long m, const Int &i);

// Linear factors a x - b of f(x) = prod (a_i x - b_i).
using LinearFactor = std::pair<Int, Int>;
Int linear_product(const std::vector<LinearFactor> &f, const Int &x);
// Pairwise coprime values a_i x - b_i.
bool brumer_rosen_T(const std::vector<LinearFactor> &f, const Int &x);
/* n = 2: the ideals (a_j x - b_j, sqrt f(x)), j < r, square to principal
 * ideals; their classes are certified to rank r - 1 - rk O^* for imaginary
 * fields and cross-checked against the genus-theory 2-rank. Real fields and
 * n > 2 stop at certified preconditions (outcome incomplete). */
SpecializationResult brumer_rosen_check(int n, const std::vector<LinearFactor> &f, const Int &x);

} // namespace classforge::constructions

#endif
