#ifndef CLASSFORGE_EXACTMATH_STURM_HPP
#define CLASSFORGE_EXACTMATH_STURM_HPP

#include "classforge/exactmath/poly_rat.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace classforge::exactmath {

// Interval endpoint: a rational, or an infinity when empty.
// The lower bound std::nullopt means -inf, the upper bound std::nullopt +inf.
struct RealInterval {
  std::optional<Rat> lo;
  std::optional<Rat> hi;
  static RealInterval whole_line() { return {}; }
};

class SturmChain {
public:
  // f must be squarefree; throws PreconditionError otherwise.
  explicit SturmChain(const PolyRat &f);

  // Sign variations at x, at -inf (x = nullopt, at_plus = false) or +inf.
  int variations_at(const Rat &x) const;
  int variations_at_infinity(bool positive) const;

  // Distinct real roots in the half-open interval (lo, hi].
  int count(const RealInterval &iv) const;

  const std::vector<PolyRat> &chain() const { return chain_; }

private:
  std::vector<PolyRat> chain_;
};

int sturm_real_root_count(const PolyRat &f, const RealInterval &iv = RealInterval::whole_line());

// Cauchy bound: every real root lies in (-B, B).
Rat root_bound(const PolyRat &f);

// Disjoint intervals (lo, hi], each containing exactly one real root of the
// squarefree polynomial f, with hi - lo <= width.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const PolyRat &f, const Rat &width);

} // namespace classforge::exactmath

#endif
