#include "classforge/quadclass/quad_form.hpp"

#include "classforge/error.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

namespace classforge::quadclass {

using namespace exactmath;

bool QuadForm::is_primitive() const { return gcd(gcd(a, b), c) == 1; }

std::string QuadForm::to_string() const {
  return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
}

bool operator<(const QuadForm &x, const QuadForm &y) {
  return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
}

QuadForm form_from_ab(const Int &a, const Int &b, const Int &D) {
  if (a == 0)
    throw PreconditionError("form with a = 0");
  Int num = b * b - D;
  if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t()))
    throw PreconditionError("4a does not divide b^2 - D");
  return {a, b, num / (4 * a)};
}

QuadForm principal_form(const Int &D) {
  if (D > 0) {
    // Largest b <= floor(sqrt(D)) with b = D mod 2 gives a reduced form.
    Int s = isqrt(D);
    Int b = (mod(s, 2) == mod(D, 2)) ? s : Int(s - 1);
    return form_from_ab(1, b, D);
  }
  Int sigma = mod(D, 2);
  return form_from_ab(1, sigma, D);
}

QuadForm opposite(const QuadForm &f) { return {f.a, -f.b, f.c}; }

namespace {

Int sqrt_floor(const Int &D) { return isqrt(D); }

// r = -b mod 2|c| chosen as in the indefinite reduction operator.
Int choose_r(const Int &b, const Int &c, const Int &s) {
  Int m = 2 * abs(c);
  if (abs(c) > s) {
    Int r = mod(-b, m);
    if (r > abs(c))
      r -= m;
    return r;
  }
  // Largest r <= s with r = -b mod 2|c|.
  return s - mod(s + b, m);
}

bool reduced_indef(const QuadForm &f, const Int &s) {
  Int aa = abs(f.a);
  return f.b > 0 && f.b <= s && s < f.b + 2 * aa && 2 * aa - f.b <= s;
}

QuadForm rho_with(const QuadForm &f, const Int &D, const Int &s) {
  Int r = choose_r(f.b, f.c, s);
  return {f.c, r, (r * r - D) / (4 * f.c)};
}

QuadForm reduce_definite(QuadForm f) {
  if (f.a < 0)
    throw PreconditionError("negative definite form " + f.to_string());
  while (true) {
    // Normalize b into (-a, a].
    Int two_a = 2 * f.a;
    Int r = mod(f.b, two_a);
    if (r > f.a)
      r -= two_a;
    if (r != f.b) {
      Int k = (r - f.b) / two_a;   // b -> b + 2ak
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = r;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0)
      f.b = -f.b;
    return f;
  }
}

QuadForm positive_lead(const QuadForm &f) {
  if (f.a > 0)
    return f;
  return {f.c, -f.b, f.a};
}

void check_same(const QuadForm &f, const QuadForm &g) {
  if (f.disc() != g.disc())
    throw MismatchError("forms " + f.to_string() + " and " + g.to_string() +
                        " have different discriminants");
}

// Shanks/Dirichlet composition for forms with positive leading coefficients.
QuadForm compose_raw(QuadForm f1, QuadForm f2) {
  if (f1.a > f2.a)
    std::swap(f1, f2);
  Int D = f1.disc();
  Int s = (f1.b + f2.b) / 2;
  Int n = f2.b - s;
  Int y1, d;
  if (mpz_divisible_p(f2.a.get_mpz_t(), f1.a.get_mpz_t())) {
    y1 = 0;
    d = f1.a;
  } else {
    Int u, v;
    mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
    y1 = u;
  }
  Int x2, y2, d1;
  if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), y2.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
    y2 = -y2;
  }
  Int v1 = f1.a / d1, v2 = f2.a / d1;
  Int r = mod(y1 * y2 * n - x2 * f2.c, v1);
  Int b3 = f2.b + 2 * v2 * r;
  Int a3 = v1 * v2;
  Int c3 = (b3 * b3 - D) / (4 * a3);
  return {a3, b3, c3};
}

} // namespace

bool is_reduced(const QuadForm &f) {
  Int D = f.disc();
  if (D < 0) {
    if (f.a <= 0)
      return false;
    if (abs(f.b) > f.a || f.a > f.c)
      return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0)
      return false;
    return true;
  }
  return reduced_indef(f, sqrt_floor(D));
}

QuadForm rho(const QuadForm &f) {
  Int D = f.disc();
  if (D <= 0 || is_square(D))
    throw PreconditionError("rho needs a positive non-square discriminant");
  return rho_with(f, D, sqrt_floor(D));
}

QuadForm reduce(const QuadForm &f) {
  Int D = f.disc();
  if (D == 0 || (D > 0 && is_square(D)))
    throw PreconditionError("degenerate discriminant for " + f.to_string());
  if (D < 0)
    return reduce_definite(f);
  Int s = sqrt_floor(D);
  QuadForm g = f;
  while (!reduced_indef(g, s))
    g = rho_with(g, D, s);
  return g;
}

QuadForm compose(const QuadForm &f, const QuadForm &g) {
  check_same(f, g);
  if (f.disc() < 0)
    return reduce(compose_raw(reduce(f), reduce(g)));
  QuadForm r = compose_raw(positive_lead(reduce(f)), positive_lead(reduce(g)));
  return reduce(r);
}

QuadForm power(const QuadForm &f, const Int &e) {
  Int D = f.disc();
  QuadForm base = reduce(e < 0 ? opposite(f) : f);
  Int k = abs(e);
  QuadForm result = principal_form(D);
  std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  if (k == 0)
    return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = compose(result, result);
    if (mpz_tstbit(k.get_mpz_t(), i))
      result = compose(result, base);
  }
  return result;
}

namespace {

using i128 = __int128;

i128 to_i128(const Int &v) {
  Int hi = v >> 64;   // arithmetic shift keeps the sign
  Int lo = v - (hi << 64);
  i128 r = static_cast<i128>(to_i64(hi));
  r = (r << 64) + static_cast<i128>(to_u64(lo));
  return r;
}

i128 mod128(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

struct Key {
  i128 a, b;
  bool operator==(const Key &o) const { return a == o.a && b == o.b; }
};
struct KeyHash {
  std::size_t operator()(const Key &k) const {
    auto h = static_cast<unsigned long long>(k.a) * 0x9e3779b97f4a7c15ull;
    return h ^ (static_cast<unsigned long long>(k.b) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2));
  }
};

// Visits the principal cycle once; marks flags of targets met on the way.
void walk_fast(const Int &D, const std::vector<QuadForm> &targets, std::vector<bool> &flags,
               const CycleBudget &budget) {
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> want;
  for (std::size_t i = 0; i < targets.size(); ++i)
    want[{to_i128(targets[i].a), to_i128(targets[i].b)}].push_back(i);
  const i128 d = to_i128(D), s = to_i128(isqrt(D));
  QuadForm p = principal_form(D);
  i128 a = to_i128(p.a), b = to_i128(p.b), c = to_i128(p.c);
  const i128 a0 = a, b0 = b;
  std::size_t remaining = want.size();
  for (std::uint64_t step = 0;; ++step) {
    if (step > budget.max_steps)
      throw BudgetExceeded("principal cycle walk exceeded " + std::to_string(budget.max_steps) + " steps");
    auto it = want.find({a, b});
    if (it != want.end()) {
      for (auto i : it->second)
        flags[i] = true;
      want.erase(it);
      if (--remaining == 0)
        return;
    }
    i128 ac = c < 0 ? -c : c, m = 2 * ac, r;
    if (ac > s) {
      r = mod128(-b, m);
      if (r > ac)
        r -= m;
    } else {
      r = s - mod128(s + b, m);
    }
    i128 nc = (r * r - d) / (4 * c);
    a = c;
    b = r;
    c = nc;
    if (a == a0 && b == b0)
      return;
  }
}

void walk_big(const Int &D, const std::vector<QuadForm> &targets, std::vector<bool> &flags,
              const CycleBudget &budget) {
  std::map<std::pair<Int, Int>, std::vector<std::size_t>> want;
  for (std::size_t i = 0; i < targets.size(); ++i)
    want[{targets[i].a, targets[i].b}].push_back(i);
  Int s = isqrt(D);
  QuadForm start = principal_form(D), f = start;
  for (std::uint64_t step = 0;; ++step) {
    if (step > budget.max_steps)
      throw BudgetExceeded("principal cycle walk exceeded " + std::to_string(budget.max_steps) + " steps");
    auto it = want.find({f.a, f.b});
    if (it != want.end()) {
      for (auto i : it->second)
        flags[i] = true;
      want.erase(it);
      if (want.empty())
        return;
    }
    f = rho_with(f, D, s);
    if (f == start)
      return;
  }
}

} // namespace

std::vector<bool> principal_flags(const std::vector<QuadForm> &forms, const CycleBudget &budget) {
  std::vector<bool> flags(forms.size(), false);
  if (forms.empty())
    return flags;
  Int D = forms[0].disc();
  for (const auto &f : forms)
    check_same(forms[0], f);
  if (D < 0) {
    QuadForm p = principal_form(D);
    for (std::size_t i = 0; i < forms.size(); ++i)
      flags[i] = reduce(forms[i]) == p;
    return flags;
  }
  std::vector<QuadForm> red;
  red.reserve(forms.size());
  for (const auto &f : forms)
    red.push_back(reduce(f));
  // Reduced forms keep |a|, |b| < sqrt(D) and |c| <= D/4, so 2^120 is safe.
  if (mpz_sizeinbase(D.get_mpz_t(), 2) < 120)
    walk_fast(D, red, flags, budget);
  else
    walk_big(D, red, flags, budget);
  return flags;
}

bool is_principal(const QuadForm &f, const CycleBudget &budget) { return principal_flags({f}, budget)[0]; }

} // namespace classforge::quadclass
