#include "classforge/exactmath/sturm.hpp"

#include "classforge/error.hpp"

#include <algorithm>

namespace classforge::exactmath {

SturmChain::SturmChain(const PolyRat &f) {
  if (f.is_zero())
    throw PreconditionError("Sturm chain of the zero polynomial");
  if (!is_squarefree(f))
    throw PreconditionError("Sturm chain needs a squarefree polynomial; divide by gcd(f, f') first");
  // Positive rescaling keeps every sign pattern, and keeps coefficients small.
  chain_.push_back(f.primitive_part());
  if (f.degree() == 0)
    return;
  chain_.push_back(f.derivative().primitive_part());
  while (chain_.back().degree() > 0) {
    PolyRat r = chain_[chain_.size() - 2] % chain_.back();
    if (r.is_zero())
      break;
    chain_.push_back((-r).primitive_part());
  }
}

namespace {
int count_changes(const std::vector<int> &signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0)
      continue;
    if (last != 0 && s != last)
      ++changes;
    last = s;
  }
  return changes;
}
} // namespace

int SturmChain::variations_at(const Rat &x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto &p : chain_)
    signs.push_back(sgn(p.eval(x)));
  return count_changes(signs);
}

int SturmChain::variations_at_infinity(bool positive) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto &p : chain_) {
    int s = sgn(p.lead());
    if (!positive && p.degree() % 2 == 1)
      s = -s;
    signs.push_back(s);
  }
  return count_changes(signs);
}

int SturmChain::count(const RealInterval &iv) const {
  int lo = iv.lo ? variations_at(*iv.lo) : variations_at_infinity(false);
  int hi = iv.hi ? variations_at(*iv.hi) : variations_at_infinity(true);
  return lo - hi;
}

int sturm_real_root_count(const PolyRat &f, const RealInterval &iv) {
  if (iv.lo && iv.hi && *iv.lo >= *iv.hi)
    return 0;
  return SturmChain(f).count(iv);
}

Rat root_bound(const PolyRat &f) {
  if (f.degree() < 1)
    return 1;
  Rat m = 0;
  for (int i = 0; i < f.degree(); ++i)
    m = std::max(m, Rat(abs(f.coeff(i) / f.lead())));
  return m + 1;
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const PolyRat &f, const Rat &width) {
  SturmChain sc(f);
  std::vector<std::pair<Rat, Rat>> out;
  Rat b = root_bound(f);
  // Work list of (lo, hi, count) with count > 0, processed left to right.
  struct Item {
    Rat lo, hi;
    int n;
  };
  std::vector<Item> stack;
  int total = sc.count({Rat(-b), b});
  if (total > 0)
    stack.push_back({Rat(-b), b, total});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.n == 1 && it.hi - it.lo <= width) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    Rat mid = (it.lo + it.hi) / 2;
    int left = sc.variations_at(it.lo) - sc.variations_at(mid);
    int right = it.n - left;
    if (right > 0)
      stack.push_back({mid, it.hi, right});
    if (left > 0)
      stack.push_back({it.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b2) { return a.first < b2.first; });
  return out;
}

std::vector<Rat> rational_roots(const PolyRat &f) {
  if (f.is_zero())
    throw PreconditionError("rational roots of the zero polynomial");
  std::vector<Rat> out;
  if (f.degree() < 1)
    return out;
  PolyRat sf = (f / poly_gcd(f, f.derivative())).primitive_part();
  // A rational root d/e in lowest terms has e | lc, so lc * root is an integer.
  Int lc = abs(sf.lead().get_num());
  Rat width(1, 2 * lc);
  width.canonicalize();
  for (const auto &[lo, hi] : isolate_real_roots(sf, width)) {
    Rat a = lo * lc, b = hi * lc;
    Int k0 = floor_div(a.get_num(), a.get_den()) + 1;
    Int k1 = floor_div(b.get_num(), b.get_den());
    for (Int k = k0; k <= k1; ++k) {
      Rat cand(k, lc);
      cand.canonicalize();
      if (sf.eval(cand) == 0)
        out.push_back(cand);
    }
  }
  return out;
}

} // namespace classforge::exactmath
