#ifndef CLASSFORGE_CONSTRUCTIONS_THLEV2_HPP
#define CLASSFORGE_CONSTRUCTIONS_THLEV2_HPP

#include "classforge/constructions/specialization.hpp"

#include <json.hpp>

#include <vector>

namespace classforge::constructions {

// Largest r with r - floor(r/m) <= n and gcd(r, m) = 1.
int thlev2_select_r(unsigned long m, int n);
// r >= n + n/(m-1) - m + 1, compared exactly.
bool thlev2_bound_holds(unsigned long m, int n, int r);

/* y^m = g(x) = -(x - a_r^m) prod_{j<r} (x + a_j^m) with a_j = j, and the map
 * phi = b (y - h) / x^{r-n}, h the m-th root series of g truncated below
 * x^{floor(r/m)} with h(0) = prod a_j, b the common denominator of h. */
struct ThLev2Family {
  unsigned long m = 0;
  int n = 0;
  int r = 0;
  bool bound_holds = false;
  std::vector<Int> a;
  PolyRat g;
  std::vector<PolyRat> f;   // x + a_j^m, j < r
  PolyRat h;
  Int b;
  std::size_t truncation = 0;

  // h^m = g mod x^truncation.
  bool series_holds() const;
};

// Throws PreconditionError unless m, n > 1 and n > (m-1)^2.
ThLev2Family thlev2_build(unsigned long m, int n);

// Res_y(y^m - g, i x^{r-n} - b (y - h)) with its x = 0 root removed; its
// degree is the degree of phi.
PolyRat thlev2_fibre(const ThLev2Family &F, const Int &i);
int thlev2_map_degree(const ThLev2Family &F, const Int &i);

nlohmann::json to_json(const ThLev2Family &F);

} // namespace classforge::constructions

#endif
