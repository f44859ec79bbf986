#ifndef CLASSFORGE_QUADCLASS_CLASS_GROUP_HPP
#define CLASSFORGE_QUADCLASS_CLASS_GROUP_HPP

#include "classforge/quadclass/fund_disc.hpp"
#include "classforge/quadclass/quad_form.hpp"

#include <vector>

namespace classforge::quadclass {

/* Finite abelian group as Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k
 * and every d_i > 1. The trivial group has no divisors. */
struct ClassGroupStructure {
  std::vector<Int> divisors;

  Int order() const;
  std::string to_string() const;
  friend bool operator==(const ClassGroupStructure &, const ClassGroupStructure &) = default;
};

struct EnumerationBound {
  Int max_abs_disc = 100000000;
};

// Primitive reduced forms of discriminant D < 0.
std::vector<QuadForm> reduced_forms_definite(const Int &D);
// Primitive reduced indefinite forms of discriminant D > 0 (all cycles).
std::vector<QuadForm> reduced_forms_indefinite(const Int &D);

// D < 0: the class group; D > 0: the narrow class group. Throws
// PreconditionError above the enumeration bound.
ClassGroupStructure class_group(const FundDisc &D, const EnumerationBound &bound = {});

// Elementary divisors of a group given element orders and the count of
// elements killed by each prime power (helper, exposed for tests).
ClassGroupStructure structure_from_orders(const std::vector<Int> &orders);

int m_rank(const ClassGroupStructure &G, const Int &m);

// t - 1 where t is the number of distinct primes dividing D.
int two_rank_genus(const FundDisc &D);

} // namespace classforge::quadclass

#endif
