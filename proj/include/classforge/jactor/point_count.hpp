#ifndef CLASSFORGE_JACTOR_POINT_COUNT_HPP
#define CLASSFORGE_JACTOR_POINT_COUNT_HPP

#include "classforge/jactor/mumford.hpp"

#include <vector>

namespace classforge::jactor {

struct PointCountBudget {
  double max_field_size = 1e8;   // largest p^k enumerated
  unsigned threads = 0;          // 0: hardware concurrency
};

// N_1..N_k with N_i = #C(F_{p^i}), the point at infinity included.
std::vector<Int> curve_point_counts(const HyperCurve &C, int up_to, const PointCountBudget &budget = {});

// Coefficients a_0 = 1, a_1, ..., a_k of the zeta numerator determined by
// N_1..N_k through Newton's identities (no functional equation used).
std::vector<Int> l_polynomial_prefix(const std::vector<Int> &counts, u64 p);

// All 2g + 1 coefficients: Newton for a_1..a_g, then a_{2g-i} = p^(g-i) a_i.
std::vector<Int> zeta_numerator(const HyperCurve &C, const PointCountBudget &budget = {});

// P(1); throws BudgetExceeded when p^g is above the budget.
Int jacobian_order(const HyperCurve &C, const PointCountBudget &budget = {});

// Exact order of [D]: smallest divisor n of |Jac| with n D = 0. When
// |Jac| is out of budget, falls back to searching n = 1..fallback_limit and
// throws BudgetExceeded if nothing is found.
Int class_order(const MumfordDivisor &D, const HyperCurve &C, const PointCountBudget &budget = {},
                u64 fallback_limit = 0);

} // namespace classforge::jactor

#endif
