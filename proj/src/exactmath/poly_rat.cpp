#include "classforge/exactmath/poly_rat.hpp"

#include "classforge/error.hpp"

#include <algorithm>
#include <sstream>

namespace classforge::exactmath {

PolyRat::PolyRat(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyRat::PolyRat(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

PolyRat PolyRat::constant(const Rat &c) { return PolyRat(std::vector<Rat>{c}); }

PolyRat PolyRat::monomial(const Rat &c, std::size_t deg) {
  std::vector<Rat> v(deg + 1);
  v[deg] = c;
  return PolyRat(std::move(v));
}

void PolyRat::trim() {
  while (!c_.empty() && c_.back() == 0)
    c_.pop_back();
}

const Rat &PolyRat::lead() const {
  if (c_.empty())
    throw PreconditionError("leading coefficient of the zero polynomial");
  return c_.back();
}

Rat PolyRat::eval(const Rat &x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

PolyRat PolyRat::derivative() const {
  if (c_.size() <= 1)
    return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return PolyRat(std::move(d));
}

PolyRat PolyRat::monic() const {
  if (c_.empty())
    return {};
  PolyRat r = *this;
  Rat inv = 1 / lead();
  r *= inv;
  return r;
}

PolyRat PolyRat::compose(const PolyRat &inner) const {
  PolyRat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

PolyRat PolyRat::pow(unsigned long e) const {
  PolyRat result = constant(1), base = *this;
  while (e) {
    if (e & 1)
      result *= base;
    e >>= 1;
    if (e)
      base *= base;
  }
  return result;
}

PolyRat PolyRat::reversed(std::size_t deg) const {
  if (degree() > static_cast<int>(deg))
    throw PreconditionError("reversal degree below polynomial degree");
  std::vector<Rat> v(deg + 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    v[deg - i] = c_[i];
  return PolyRat(std::move(v));
}

Int PolyRat::common_denominator() const {
  Int d = 1;
  for (const auto &q : c_)
    d = lcm(d, q.get_den());
  return d;
}

bool PolyRat::has_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat &q) { return q.get_den() == 1; });
}

int PolyRat::x_adic_order() const {
  if (c_.empty())
    throw PreconditionError("x-adic order of zero polynomial");
  int k = 0;
  while (c_[k] == 0)
    ++k;
  return k;
}

PolyRat PolyRat::primitive_part() const {
  if (c_.empty())
    return {};
  Int den = common_denominator();
  Int g = 0;
  for (const auto &q : c_)
    g = gcd(g, Int(q.get_num() * (den / q.get_den())));
  Rat scale(den, g);
  scale.canonicalize();
  PolyRat r = *this;
  r *= scale;
  return r;
}

PolyRat &PolyRat::operator+=(const PolyRat &o) {
  if (o.c_.size() > c_.size())
    c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyRat &PolyRat::operator-=(const PolyRat &o) {
  if (o.c_.size() > c_.size())
    c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i)
    c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyRat &PolyRat::operator*=(const PolyRat &o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyRat &PolyRat::operator*=(const Rat &s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto &q : c_)
    q *= s;
  return *this;
}

PolyRat operator-(PolyRat a) {
  for (auto &q : a.c_)
    q = -q;
  return a;
}

std::pair<PolyRat, PolyRat> divmod(const PolyRat &a, const PolyRat &b) {
  if (b.is_zero())
    throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree())
    return {PolyRat{}, a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quo(a.degree() - b.degree() + 1);
  const auto &bc = b.coeffs();
  Rat inv = 1 / b.lead();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    Rat q = rem[i + b.degree()] * inv;
    quo[i] = q;
    if (q == 0)
      continue;
    for (int j = 0; j <= b.degree(); ++j)
      rem[i + j] -= q * bc[j];
  }
  rem.resize(b.degree());
  return {PolyRat(std::move(quo)), PolyRat(std::move(rem))};
}

PolyRat operator/(const PolyRat &a, const PolyRat &b) { return divmod(a, b).first; }
PolyRat operator%(const PolyRat &a, const PolyRat &b) { return divmod(a, b).second; }

std::string PolyRat::to_string(const char *var) const {
  if (c_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat &q = c_[i];
    if (q == 0)
      continue;
    Rat a = abs(q);
    if (!first)
      os << (q < 0 ? " - " : " + ");
    else if (q < 0)
      os << "-";
    first = false;
    bool unit = a == 1;
    if (!unit || i == 0)
      os << exactmath::to_string(a);
    if (i > 0) {
      if (!unit)
        os << "*";
      os << var;
      if (i > 1)
        os << "^" << i;
    }
  }
  return os.str();
}

PolyRat poly_gcd(const PolyRat &f, const PolyRat &g) {
  PolyRat a = f.primitive_part(), b = g.primitive_part();
  while (!b.is_zero()) {
    PolyRat r = (a % b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Rat resultant(const PolyRat &f, const PolyRat &g) {
  if (f.is_zero() || g.is_zero())
    throw PreconditionError("resultant with the zero polynomial");
  PolyRat a = f, b = g;
  Rat acc = 1;
  // res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r), r = a mod b.
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0)
      return acc * rpow(b.lead(), da);
    if (da == 0)
      return acc * rpow(a.lead(), db);
    PolyRat r = a % b;
    if (r.is_zero())
      return 0;
    if ((static_cast<long>(da) * db) % 2 == 1)
      acc = -acc;
    acc *= rpow(b.lead(), da - r.degree());
    a = std::move(b);
    b = std::move(r);
  }
}

Rat discriminant(const PolyRat &f) {
  if (f.is_zero())
    throw PreconditionError("discriminant of the zero polynomial");
  long d = f.degree();
  if (d < 1)
    throw PreconditionError("discriminant of a constant");
  if (d == 1)
    return 1;
  Rat r = resultant(f, f.derivative()) / f.lead();
  if ((d * (d - 1) / 2) % 2 == 1)
    r = -r;
  return r;
}

bool is_squarefree(const PolyRat &f) {
  if (f.is_zero())
    return false;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

std::vector<PolyRat> squarefree_decomposition(const PolyRat &f) {
  if (f.is_zero())
    throw PreconditionError("squarefree decomposition of zero");
  std::vector<PolyRat> out;
  PolyRat fm = f.monic();
  if (fm.degree() == 0)
    return out;
  PolyRat a = poly_gcd(fm, fm.derivative());
  PolyRat b = fm / a;
  PolyRat c = fm.derivative() / a;
  PolyRat d = c - b.derivative();
  while (b.degree() > 0) {
    PolyRat s = poly_gcd(b, d);
    out.push_back(s);
    b = b / s;
    c = d / s;
    d = c - b.derivative();
  }
  return out;
}

PolyRat odd_part(const PolyRat &f) {
  PolyRat acc = PolyRat::constant(f.lead());
  auto parts = squarefree_decomposition(f);
  for (std::size_t i = 0; i < parts.size(); i += 2)
    acc *= parts[i];
  return acc;
}

} // namespace classforge::exactmath
