#ifndef CLASSFORGE_EXACTMATH_SERIES_HPP
#define CLASSFORGE_EXACTMATH_SERIES_HPP

#include "classforge/exactmath/poly_rat.hpp"

#include <vector>

namespace classforge::exactmath {

/* Truncated power series sum_{i<k} c_i x^i over Q. Every operation truncates
 * to the smaller order of its operands. */
class PowerSeriesRat {
public:
  PowerSeriesRat(std::size_t order, std::vector<Rat> coeffs);
  static PowerSeriesRat from_poly(const PolyRat &p, std::size_t order);

  std::size_t order() const { return c_.size(); }
  const Rat &operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<Rat> &coeffs() const { return c_; }
  PolyRat to_poly() const { return PolyRat(c_); }
  PowerSeriesRat truncate(std::size_t order) const;

  friend PowerSeriesRat operator+(const PowerSeriesRat &a, const PowerSeriesRat &b);
  friend PowerSeriesRat operator-(const PowerSeriesRat &a, const PowerSeriesRat &b);
  friend PowerSeriesRat operator*(const PowerSeriesRat &a, const PowerSeriesRat &b);
  friend PowerSeriesRat operator*(const Rat &s, const PowerSeriesRat &a);
  friend bool operator==(const PowerSeriesRat &a, const PowerSeriesRat &b) { return a.c_ == b.c_; }

  PowerSeriesRat pow(unsigned long e) const;
  // Multiplicative inverse; constant term must be nonzero.
  PowerSeriesRat inverse() const;

private:
  std::vector<Rat> c_;
};

// h with h^m = g mod x^k and h(0) = branch, by Newton iteration with
// precision doubling. Requires g(0) = branch^m != 0, k >= 1, m >= 1.
PowerSeriesRat series_mth_root(const PolyRat &g, unsigned long m, std::size_t k, const Rat &branch);

} // namespace classforge::exactmath

#endif
