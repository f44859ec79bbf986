#include "classforge/exactmath/series.hpp"

#include "classforge/error.hpp"

#include <algorithm>

namespace classforge::exactmath {

PowerSeriesRat::PowerSeriesRat(std::size_t order, std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  c_.resize(order);
}

PowerSeriesRat PowerSeriesRat::from_poly(const PolyRat &p, std::size_t order) {
  std::vector<Rat> v(order);
  for (std::size_t i = 0; i < order; ++i)
    v[i] = p.coeff(i);
  return PowerSeriesRat(order, std::move(v));
}

PowerSeriesRat PowerSeriesRat::truncate(std::size_t order) const {
  if (order > c_.size())
    throw PreconditionError("cannot raise the order of a truncated series");
  return PowerSeriesRat(order, std::vector<Rat>(c_.begin(), c_.begin() + order));
}

PowerSeriesRat operator+(const PowerSeriesRat &a, const PowerSeriesRat &b) {
  std::size_t k = std::min(a.order(), b.order());
  std::vector<Rat> v(k);
  for (std::size_t i = 0; i < k; ++i)
    v[i] = a.c_[i] + b.c_[i];
  return PowerSeriesRat(k, std::move(v));
}

PowerSeriesRat operator-(const PowerSeriesRat &a, const PowerSeriesRat &b) {
  std::size_t k = std::min(a.order(), b.order());
  std::vector<Rat> v(k);
  for (std::size_t i = 0; i < k; ++i)
    v[i] = a.c_[i] - b.c_[i];
  return PowerSeriesRat(k, std::move(v));
}

PowerSeriesRat operator*(const PowerSeriesRat &a, const PowerSeriesRat &b) {
  std::size_t k = std::min(a.order(), b.order());
  std::vector<Rat> v(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (a.c_[i] == 0)
      continue;
    for (std::size_t j = 0; i + j < k; ++j)
      v[i + j] += a.c_[i] * b.c_[j];
  }
  return PowerSeriesRat(k, std::move(v));
}

PowerSeriesRat operator*(const Rat &s, const PowerSeriesRat &a) {
  std::vector<Rat> v = a.c_;
  for (auto &q : v)
    q *= s;
  return PowerSeriesRat(a.order(), std::move(v));
}

PowerSeriesRat PowerSeriesRat::pow(unsigned long e) const {
  std::vector<Rat> one(order());
  if (!one.empty())
    one[0] = 1;
  PowerSeriesRat result(order(), std::move(one)), base = *this;
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

PowerSeriesRat PowerSeriesRat::inverse() const {
  if (c_.empty() || c_[0] == 0)
    throw PreconditionError("series inverse needs a nonzero constant term");
  std::size_t k = order();
  PowerSeriesRat y(1, {1 / c_[0]});
  std::size_t prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    PowerSeriesRat a = truncate(prec);
    PowerSeriesRat yy(prec, y.c_);
    // y <- y (2 - a y)
    PowerSeriesRat two(prec, {Rat(2)});
    yy = yy * (two - a * yy);
    y = yy;
  }
  return y;
}

PowerSeriesRat series_mth_root(const PolyRat &g, unsigned long m, std::size_t k, const Rat &branch) {
  if (k < 1)
    throw PreconditionError("series order must be at least 1");
  if (m < 1)
    throw PreconditionError("root index must be positive");
  Rat g0 = g.coeff(0);
  if (g0 == 0)
    throw PreconditionError("m-th root series needs g(0) != 0");
  if (rpow(branch, static_cast<long>(m)) != g0)
    throw PreconditionError("branch^m differs from g(0)");
  PowerSeriesRat h(1, {branch});
  std::size_t prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    PowerSeriesRat hh(prec, h.coeffs());
    PowerSeriesRat gg = PowerSeriesRat::from_poly(g, prec);
    // Newton step for H^m - g: h <- h - (h^m - g) / (m h^{m-1}).
    PowerSeriesRat hm1 = hh.pow(m - 1);
    PowerSeriesRat resid = hm1 * hh - gg;
    PowerSeriesRat step = resid * (Rat(static_cast<long>(m)) * hm1).inverse();
    h = hh - step;
  }
  return h;
}

} // namespace classforge::exactmath
