#ifndef CLASSFORGE_QUADCLASS_FUND_DISC_HPP
#define CLASSFORGE_QUADCLASS_FUND_DISC_HPP

#include "classforge/exactmath/factor_int.hpp"

namespace classforge::quadclass {

using exactmath::Int;

/* Discriminant of a quadratic field: D = d when d = 1 mod 4, else 4d, with
 * d the squarefree core. */
struct FundDisc {
  Int D;
  Int d;

  int sign() const { return sgn(D); }
  bool imaginary() const { return D < 0; }
  friend bool operator==(const FundDisc &, const FundDisc &) = default;
};

// Discriminant of Q(sqrt(n)). Throws PreconditionError for 0 or a square,
// BudgetExceeded when n cannot be factored within the budget.
FundDisc fundamental_discriminant(const Int &n, const exactmath::FactorBudget &budget = {});

// Validates that D is itself a fundamental discriminant.
FundDisc fund_disc_from_D(const Int &D);
bool is_fundamental_discriminant(const Int &D);

} // namespace classforge::quadclass

#endif
