#include "classforge/constructions/thlev2.hpp"

#include "classforge/error.hpp"
#include "classforge/exactmath/resultant.hpp"
#include "classforge/exactmath/series.hpp"

#include <numeric>

namespace classforge::constructions {

using exactmath::ipow;
using exactmath::PolyOverPoly;

int thlev2_select_r(unsigned long m, int n) {
  const long M = static_cast<long>(m);
  // r - floor(r/m) is nondecreasing in r, so scan down from its last solution.
  long r = 1;
  while ((r + 1) - (r + 1) / M <= n)
    ++r;
  for (; r > 0; --r)
    if (r - r / M <= n && std::gcd(r, M) == 1)
      return static_cast<int>(r);
  throw PreconditionError("no admissible r");
}

bool thlev2_bound_holds(unsigned long m, int n, int r) {
  const long k = static_cast<long>(m) - 1;
  return k * r >= k * (n - k) + n;
}

bool ThLev2Family::series_holds() const {
  PolyRat hm = PolyRat::constant(Rat(1));
  for (unsigned long k = 0; k < m; ++k)
    hm = hm * h;
  PolyRat diff = hm - g;
  for (std::size_t i = 0; i < truncation; ++i)
    if (diff.coeff(i) != 0)
      return false;
  return true;
}

ThLev2Family thlev2_build(unsigned long m, int n) {
  const long k = static_cast<long>(m) - 1;
  if (m < 2 || n < 2 || n <= k * k)
    throw PreconditionError("thlev2 needs m, n > 1 and n > (m-1)^2");
  ThLev2Family F;
  F.m = m;
  F.n = n;
  F.r = thlev2_select_r(m, n);
  F.bound_holds = thlev2_bound_holds(m, n, F.r);
  Int h0 = 1;
  for (int j = 1; j <= F.r; ++j) {
    F.a.push_back(Int(j));
    h0 *= j;
  }
  const PolyRat x = PolyRat::x();
  F.g = PolyRat::constant(Rat(-1)) * (x - PolyRat::constant(Rat(ipow(F.a.back(), m))));
  for (int j = 0; j + 1 < F.r; ++j) {
    F.f.push_back(x + PolyRat::constant(Rat(ipow(F.a[j], m))));
    F.g = F.g * F.f.back();
  }
  F.truncation = static_cast<std::size_t>(F.r / static_cast<long>(m));
  F.h = exactmath::series_mth_root(F.g, m, F.truncation, Rat(h0)).to_poly();
  F.b = 1;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(std::max(F.h.degree(), 0)); ++i)
    F.b = lcm(F.b, Int(F.h.coeff(i).get_den()));
  return F;
}

PolyRat thlev2_fibre(const ThLev2Family &F, const Int &i) {
  PolyOverPoly curve(F.m + 1, PolyRat());
  curve[0] = PolyRat::constant(Rat(-1)) * F.g;
  curve[F.m] = PolyRat::constant(Rat(1));
  PolyRat xs = PolyRat::constant(Rat(i));
  for (int k = 0; k < F.r - F.n; ++k)
    xs = xs * PolyRat::x();
  PolyOverPoly line{xs + PolyRat::constant(Rat(F.b)) * F.h, PolyRat::constant(Rat(-F.b))};
  PolyRat R = exactmath::resultant_in_y(curve, line);
  std::vector<Rat> c = R.coeffs();
  std::size_t ord = 0;
  while (ord < c.size() && c[ord] == 0)
    ++ord;
  return PolyRat(std::vector<Rat>(c.begin() + static_cast<long>(ord), c.end()));
}

int thlev2_map_degree(const ThLev2Family &F, const Int &i) { return thlev2_fibre(F, i).degree(); }

nlohmann::json to_json(const ThLev2Family &F) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto &v : F.a)
    a.push_back(v.get_str());
  return {{"m", F.m},          {"n", F.n},         {"r", F.r},
          {"bound_holds", F.bound_holds},          {"a", a},
          {"g", F.g.to_string()}, {"h", F.h.to_string()}, {"b", F.b.get_str()},
          {"truncation", F.truncation}};
}

} // namespace classforge::constructions
