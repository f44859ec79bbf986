#ifndef CLASSFORGE_EXACTMATH_SPARSE_POLY_HPP
#define CLASSFORGE_EXACTMATH_SPARSE_POLY_HPP

#include "classforge/exactmath/poly_rat.hpp"

#include <array>
#include <map>
#include <sstream>
#include <string>

namespace classforge::exactmath {

/* Sparse polynomial over Q in N variables: exponent vector -> coefficient.
 * No explicit zero entries are ever stored. */
template <std::size_t N> class SparsePoly {
public:
  using Exps = std::array<unsigned, N>;
  using Terms = std::map<Exps, Rat>;

  SparsePoly() = default;
  static SparsePoly constant(const Rat &c) {
    SparsePoly p;
    p.add_term(Exps{}, c);
    return p;
  }
  static SparsePoly var(std::size_t i) {
    Exps e{};
    e[i] = 1;
    SparsePoly p;
    p.add_term(e, 1);
    return p;
  }
  static SparsePoly term(const Rat &c, const Exps &e) {
    SparsePoly p;
    p.add_term(e, c);
    return p;
  }

  void add_term(const Exps &e, const Rat &c) {
    if (c == 0)
      return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        t_.erase(it);
    }
  }

  const Terms &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rat coeff(const Exps &e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto &[e, c] : t_) {
      unsigned s = 0;
      for (auto v : e)
        s += v;
      d = std::max(d, s);
    }
    return d;
  }

  SparsePoly &operator+=(const SparsePoly &o) {
    for (const auto &[e, c] : o.t_)
      add_term(e, c);
    return *this;
  }
  SparsePoly &operator-=(const SparsePoly &o) {
    for (const auto &[e, c] : o.t_)
      add_term(e, -c);
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly &b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly &b) { return a -= b; }
  friend SparsePoly operator-(const SparsePoly &a) { return SparsePoly() - a; }
  friend SparsePoly operator*(const SparsePoly &a, const SparsePoly &b) {
    SparsePoly r;
    for (const auto &[ea, ca] : a.t_)
      for (const auto &[eb, cb] : b.t_) {
        Exps e;
        for (std::size_t i = 0; i < N; ++i)
          e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  friend SparsePoly operator*(const Rat &s, const SparsePoly &a) {
    SparsePoly r;
    for (const auto &[e, c] : a.t_)
      r.add_term(e, s * c);
    return r;
  }
  friend bool operator==(const SparsePoly &a, const SparsePoly &b) { return a.t_ == b.t_; }

  SparsePoly pow(unsigned e) const {
    SparsePoly r = constant(1), b = *this;
    while (e) {
      if (e & 1)
        r = r * b;
      e >>= 1;
      if (e)
        b = b * b;
    }
    return r;
  }

  Rat eval(const std::array<Rat, N> &x) const {
    Rat acc = 0;
    for (const auto &[e, c] : t_) {
      Rat v = c;
      for (std::size_t i = 0; i < N; ++i)
        if (e[i])
          v *= rpow(x[i], static_cast<long>(e[i]));
      acc += v;
    }
    return acc;
  }

  // Substitute polynomials in M variables for each of the N variables.
  template <std::size_t M> SparsePoly<M> substitute(const std::array<SparsePoly<M>, N> &images) const {
    SparsePoly<M> r;
    std::array<std::map<unsigned, SparsePoly<M>>, N> powers;
    for (const auto &[e, c] : t_) {
      SparsePoly<M> m = SparsePoly<M>::constant(c);
      for (std::size_t i = 0; i < N; ++i) {
        if (!e[i])
          continue;
        auto it = powers[i].find(e[i]);
        if (it == powers[i].end())
          it = powers[i].emplace(e[i], images[i].pow(e[i])).first;
        m = m * it->second;
      }
      r += m;
    }
    return r;
  }

  // Univariate restriction: every variable except `keep` set to a rational.
  PolyRat restrict_to(std::size_t keep, const std::array<Rat, N> &values) const {
    std::vector<Rat> c;
    for (const auto &[e, co] : t_) {
      Rat v = co;
      for (std::size_t i = 0; i < N; ++i)
        if (i != keep && e[i])
          v *= rpow(values[i], static_cast<long>(e[i]));
      if (c.size() <= e[keep])
        c.resize(e[keep] + 1);
      c[e[keep]] += v;
    }
    return PolyRat(std::move(c));
  }

  std::string to_string(const std::array<const char *, N> &names) const {
    if (t_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      if (!first)
        os << " + ";
      first = false;
      os << exactmath::to_string(it->second);
      for (std::size_t i = 0; i < N; ++i)
        if (it->first[i])
          os << "*" << names[i] << (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
    }
    return os.str();
  }

private:
  Terms t_;
};

using BiPolyRat = SparsePoly<2>;

} // namespace classforge::exactmath

#endif
