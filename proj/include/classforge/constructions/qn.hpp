#ifndef CLASSFORGE_CONSTRUCTIONS_QN_HPP
#define CLASSFORGE_CONSTRUCTIONS_QN_HPP

#include "classforge/constructions/specialization.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace classforge::constructions {

/* Degree-n fields with prescribed signature from curves on
 * x^e t0^m = -sigma prod_j (x - t_j^m): the fibre over y is a root of
 *   g_y(x) = x^e t0(y)^m + sigma prod_{j=1}^n (x - t_j(y)^m),
 * t0 a power of a linear form in y and each t_j constant or linear in y. */
enum class QnCase {
  one_or_two_real,   // n odd, r1 = 1 or n even, r1 = 2
  three_real,        // n odd, r1 = 3
  no_real_odd_m,     // m odd, n even, r1 = 0
  no_real_even_m,    // m, n even, r1 = 0
  totally_real,      // r1 = n
  odd_middle,        // n odd, 3 < r1 < n
  even_middle,       // n even, 2 < r1 < n
};
std::string to_string(QnCase c);

// Throws PreconditionError unless r1 <= n, r1 = n mod 2, m, n > 1.
QnCase qn_case(unsigned long m, int n, int r1);
// E with disc_x(g_y) = O(y^E); the family gives >> X^{1/E} / log X fields.
long qn_growth_exponent(unsigned long m, int n, int r1);

struct QnFamily {
  unsigned long m = 0;
  int n = 0, r1 = 0;
  QnCase kind = QnCase::one_or_two_real;
  int e = 1;
  int sigma = 1;
  PolyRat t0_base;                 // linear in y
  int t0_power = 1;
  std::vector<PolyRat> t;          // t_1 .. t_n in y
  std::vector<std::pair<std::string, Int>> params;
  long growth_exponent = 0;

  PolyRat t0() const;
  // Coefficients of g in x (index = power of x), each a polynomial in y.
  std::vector<PolyRat> g_coefficients() const;
  PolyRat g_at(const Int &y) const;
};

// Conditions making each x - t_j^m an m-th power of an ideal at the fibre.
bool qn_rp1(const QnFamily &F, const Int &y);
bool qn_rp2(const QnFamily &F, const Int &y);

// rp1 and rp2 for every integer y: a prime dividing both sides for some y
// divides the resultant in y of the linear factor and the other side.
struct QnAllYCertificate {
  bool rp1 = false;
  std::vector<bool> rp2;
  std::string detail;
  bool holds() const;
};
QnAllYCertificate qn_all_y_certificate(const QnFamily &F);

struct QnSearchBudget {
  int max_candidates = 400;
};
// Throws BudgetExceeded (with the number of candidates tried) when no
// parameter set passes the all-y certificate and the signature test.
QnFamily qn_param_search(unsigned long m, int n, int r1, const QnSearchBudget &budget = {});
QnFamily qn_build(unsigned long m, int n, int r1);

// disc_x(g_y) as a polynomial in y.
PolyRat qn_discriminant(const QnFamily &F);
// Real roots of g_y (squarefree part) by Sturm sequences.
int qn_signature(const QnFamily &F, const Int &y);
// Smallest y0 such that disc_x(g_y) and the leading coefficient have no
// real root in [y0, inf); the real-root count of g_y is constant there.
Int qn_threshold(const PolyRat &disc, const PolyRat &lead);
// Irreducibility over Q from factorization degree patterns modulo small
// primes: no proper factor degree is compatible with every pattern.
bool qn_irreducible(const PolyRat &g, int max_primes = 30);

struct LogLogFit {
  double slope = 0;
  double max_residual = 0;
};
// Least squares slope of log|f(y)| against log y on a geometric grid.
LogLogFit loglog_fit(const std::vector<std::pair<double, double>> &points);
LogLogFit qn_discriminant_growth(const PolyRat &disc, const Int &from);

struct QnReport {
  QnFamily family;
  long y_lo = 0, y_hi = 0;
  int rp_failures = 0;
  int reducible = 0;
  QnAllYCertificate all_y;
  PolyRat disc;
  Int threshold;
  int signature_at_threshold = 0;
  bool signature_stable = false;
  LogLogFit growth;
  bool growth_ok = false;           // within 5% of the case exponent
  std::string conclusion;
  bool passed() const;
};
QnReport qn_verify(const QnFamily &F, long y_lo, long y_hi);

nlohmann::json to_json(const QnFamily &F);
nlohmann::json to_json(const QnReport &r);

} // namespace classforge::constructions

#endif
