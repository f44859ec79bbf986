#ifndef CLASSFORGE_QUADCLASS_QUAD_FORM_HPP
#define CLASSFORGE_QUADCLASS_QUAD_FORM_HPP

#include "classforge/exactmath/number.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace classforge::quadclass {

using exactmath::Int;

/* Binary quadratic form a x^2 + b x y + c y^2 of discriminant b^2 - 4ac. */
struct QuadForm {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  bool is_primitive() const;
  std::string to_string() const;
  friend bool operator==(const QuadForm &, const QuadForm &) = default;
  friend bool operator<(const QuadForm &x, const QuadForm &y);
};

// Form with the given a and b; c is solved from the discriminant
// (PreconditionError if 4a does not divide b^2 - D).
QuadForm form_from_ab(const Int &a, const Int &b, const Int &D);

// (1, D mod 2, (D mod 2 - D)/4) in reduced position.
QuadForm principal_form(const Int &D);
QuadForm opposite(const QuadForm &f);   // (a, -b, c), the inverse class

bool is_reduced(const QuadForm &f);
// D < 0: unique reduced representative. D > 0: a reduced form on the cycle
// of f (not canonical; compare cycles with is_principal / same_class).
QuadForm reduce(const QuadForm &f);
// One step of the proper reduction operator for D > 0.
QuadForm rho(const QuadForm &f);

QuadForm compose(const QuadForm &f, const QuadForm &g);
QuadForm power(const QuadForm &f, const Int &e);

struct CycleBudget {
  std::uint64_t max_steps = 200000000;
};

bool is_principal(const QuadForm &f, const CycleBudget &budget = {});
// Principality of many forms of one discriminant with a single walk of the
// principal cycle when D > 0.
std::vector<bool> principal_flags(const std::vector<QuadForm> &forms, const CycleBudget &budget = {});

} // namespace classforge::quadclass

#endif
