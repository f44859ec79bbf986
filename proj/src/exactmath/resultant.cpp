#include "classforge/exactmath/resultant.hpp"

#include "classforge/error.hpp"

namespace classforge::exactmath {

PolyRat determinant(std::vector<std::vector<PolyRat>> m) {
  std::size_t n = m.size();
  if (n == 0)
    return PolyRat::constant(1);
  for (const auto &row : m)
    if (row.size() != n)
      throw PreconditionError("determinant of a non-square matrix");
  PolyRat prev = PolyRat::constant(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero())
        ++piv;
      if (piv == n)
        return PolyRat();
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        PolyRat num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = num / prev;
      }
      m[i][k] = PolyRat();
    }
    prev = m[k][k];
  }
  PolyRat d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

PolyRat resultant_in_y(const PolyOverPoly &a, const PolyOverPoly &b) {
  if (a.empty() || b.empty() || a.back().is_zero() || b.back().is_zero())
    throw PreconditionError("resultant needs nonzero leading coefficients in y");
  std::size_t da = a.size() - 1, db = b.size() - 1, n = da + db;
  if (n == 0)
    return PolyRat::constant(1);
  std::vector<std::vector<PolyRat>> s(n, std::vector<PolyRat>(n));
  // Rows hold coefficients from the highest power of y down.
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j <= da; ++j)
      s[i][i + j] = a[da - j];
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j <= db; ++j)
      s[db + i][i + j] = b[db - j];
  return determinant(std::move(s));
}

} // namespace classforge::exactmath
