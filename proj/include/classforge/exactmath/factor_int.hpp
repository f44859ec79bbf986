#ifndef CLASSFORGE_EXACTMATH_FACTOR_INT_HPP
#define CLASSFORGE_EXACTMATH_FACTOR_INT_HPP

#include "classforge/exactmath/number.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace classforge::exactmath {

struct FactorBudget {
  std::uint64_t trial_limit = 1000000;
  std::uint64_t rho_iterations = 10000000;
};

/* n = sign * prod p^e * cofactor. When complete is false, cofactor is a
 * composite that the rho budget could not split; it is never guessed. */
struct IntFactorization {
  int sign = 1;
  std::vector<std::pair<Int, unsigned>> factors;   // ascending primes
  Int cofactor = 1;
  bool complete = true;

  Int value() const;
};

IntFactorization factor_int(const Int &n, const FactorBudget &budget = {});

// n divided by its largest square divisor (sign kept). Throws
// BudgetExceeded when the factorization is incomplete.
Int squarefree_part(const Int &n, const FactorBudget &budget = {});

// Baillie-PSW plus extra Miller-Rabin rounds (GMP).
bool is_probable_prime(const Int &n);

int kronecker_symbol(const Int &a, const Int &n);

// y^((q-1)/p) == 1 mod q, under the residue-symbol hypotheses:
// q prime, p prime with q = 1 mod p (q = 1 mod 4 when p = 2), gcd(y, q) = 1.
bool power_residue(const Int &y, const Int &p, const Int &q);

} // namespace classforge::exactmath

#endif
