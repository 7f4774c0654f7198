#include "knowsearch/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace knowsearch::dist {

namespace {

constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

double gamma_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper tail by Lentz's continued fraction.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_continued_fraction(double x, double a, double b) {
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0) throw std::domain_error("gamma_p: a must be positive");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0) throw std::domain_error("gamma_q: a must be positive");
  if (x <= 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

double beta_i(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double chi_square_sf(double x, double df) {
  if (x <= 0.0) return 1.0;
  return std::clamp(gamma_q(0.5 * df, 0.5 * x), 0.0, 1.0);
}

double f_sf(double x, double df1, double df2) {
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::clamp(beta_i(df2 / (df2 + df1 * x), 0.5 * df2, 0.5 * df1), 0.0, 1.0);
}

double studentized_range_cdf(double q, int k) {
  if (k < 2) throw std::domain_error("studentized range needs k >= 2");
  if (q <= 0.0) return 0.0;
  if (std::isinf(q)) return 1.0;
  // P(R <= q) = k * integral phi(z) [Phi(z) - Phi(z - q)]^(k-1) dz,
  // composite Simpson over a range that carries all the mass of phi(z).
  constexpr double lo = -9.0;
  const double hi = 9.0 + q;
  constexpr int intervals = 6000;
  const double h = (hi - lo) / intervals;
  auto f = [&](double z) { return normal_pdf(z) * std::pow(normal_cdf(z) - normal_cdf(z - q), k - 1); };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return std::clamp(k * sum * h / 3.0, 0.0, 1.0);
}

double studentized_range_sf(double q, int k) { return std::clamp(1.0 - studentized_range_cdf(q, k), 0.0, 1.0); }

}  // namespace knowsearch::dist
