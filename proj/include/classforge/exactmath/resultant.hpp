#ifndef CLASSFORGE_EXACTMATH_RESULTANT_HPP
#define CLASSFORGE_EXACTMATH_RESULTANT_HPP

#include "classforge/exactmath/poly_rat.hpp"

#include <vector>

namespace classforge::exactmath {

// A polynomial in y whose coefficients lie in Q[x], low degree in y first.
using PolyOverPoly = std::vector<PolyRat>;

// Determinant of a square matrix over Q[x] by fraction-free Bareiss
// elimination (every division is exact).
PolyRat determinant(std::vector<std::vector<PolyRat>> m);

// Res_y(A, B) as the Sylvester determinant; both leading coefficients in y
// must be nonzero.
PolyRat resultant_in_y(const PolyOverPoly &a, const PolyOverPoly &b);

} // namespace classforge::exactmath

#endif
