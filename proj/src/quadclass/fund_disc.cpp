#include "classforge/quadclass/fund_disc.hpp"

#include "classforge/error.hpp"

namespace classforge::quadclass {

using namespace exactmath;

namespace {
FundDisc from_core(const Int &d) {
  if (mod(d, 4) == 1)
    return {d, d};
  return {4 * d, d};
}
} // namespace

FundDisc fundamental_discriminant(const Int &n, const FactorBudget &budget) {
  if (n == 0)
    throw PreconditionError("Q(sqrt(0)) is not a quadratic field");
  if (n > 0 && is_square(n))
    throw PreconditionError("Q(sqrt(" + to_string(n) + ")) is not a quadratic field");
  return from_core(squarefree_part(n, budget));
}

bool is_fundamental_discriminant(const Int &D) {
  if (D == 0 || D == 1)
    return false;
  Int r = mod(D, 4);
  if (r == 1) {
    IntFactorization f = factor_int(D);
    if (!f.complete)
      throw BudgetExceeded("cannot factor " + to_string(D));
    for (const auto &[p, e] : f.factors)
      if (e > 1)
        return false;
    return true;
  }
  if (r != 0)
    return false;
  Int d = D / 4;
  Int r4 = mod(d, 4);
  if (r4 != 2 && r4 != 3)
    return false;
  IntFactorization f = factor_int(d);
  if (!f.complete)
    throw BudgetExceeded("cannot factor " + to_string(d));
  for (const auto &[p, e] : f.factors)
    if (e > 1)
      return false;
  return true;
}

FundDisc fund_disc_from_D(const Int &D) {
  if (!is_fundamental_discriminant(D))
    throw PreconditionError(to_string(D) + " is not a fundamental discriminant");
  return {D, mod(D, 4) == 1 ? D : Int(D / 4)};
}

} // namespace classforge::quadclass
