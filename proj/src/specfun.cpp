#include "specfun.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pqov::specfun {

namespace {

double log_gamma(double x) {
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

void require_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw invalid_argument_error("specfun: order must be in [0, " +
                                 std::to_string(kMaxOrder) + "], got " +
                                 std::to_string(order));
  }
}

// Ascending power series for J_q; safe from cancellation for small |x|.
double bessel_j_series(int q, double x) {
  const double halfx = 0.5 * x;
  double term = std::exp(q * std::log(halfx) - log_gamma(q + 1.0));
  if (term == 0.0) return 0.0;
  double sum = term;
  const double x2 = halfx * halfx;
  for (int m = 1; m <= 64; ++m) {
    term *= -x2 / (m * double(m + q));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

// Backward (Miller) recurrence, normalized by J_0 + 2*sum_k J_{2k} = 1.
double bessel_j_miller(int q, double x) {
  const double big = std::max(double(q), x);
  int m = int(big + 20.0 + 10.0 * std::sqrt(big));
  if (m % 2 != 0) ++m;
  double fp1 = 0.0;      // f_{k+1}
  double fk = 1e-250;    // f_k, arbitrary seed
  double norm = 0.0;     // J_0 + 2*sum even orders
  double result = 0.0;
  for (int k = m; k >= 0; --k) {
    const double fm1 = (2.0 * (k + 1) / x) * fk - fp1;
    fp1 = fk;
    fk = fm1;
    if (k == q) result = fk;
    if (k % 2 == 0) norm += (k == 0) ? fk : 2.0 * fk;
    if (std::abs(fk) > 1e250) {
      fk *= 1e-250;
      fp1 *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

// Ascending series for e^{-x} I_q(x); all terms positive.
double bessel_i_scaled_series(int q, double x) {
  const double halfx = 0.5 * x;
  double term = std::exp(q * std::log(halfx) - log_gamma(q + 1.0) - x);
  if (term == 0.0) return 0.0;
  double sum = term;
  const double x2 = halfx * halfx;
  for (int m = 1; m <= 96; ++m) {
    term *= x2 / (m * double(m + q));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Backward recurrence for the scaled I, normalized by i_0 + 2*sum_k i_k = 1.
double bessel_i_scaled_miller(int q, double x) {
  const double big = std::max(double(q), x);
  const int m = int(big + 20.0 + 10.0 * std::sqrt(big));
  double pp1 = 0.0;
  double pk = 1e-250;
  double norm = 0.0;
  double result = 0.0;
  for (int k = m; k >= 0; --k) {
    const double pm1 = pp1 + (2.0 * (k + 1) / x) * pk;
    pp1 = pk;
    pk = pm1;
    if (k == q) result = pk;
    norm += (k == 0) ? pk : 2.0 * pk;
    if (pk > 1e250) {
      pk *= 1e-250;
      pp1 *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
  require_order(order);
  if (!std::isfinite(x)) {
    throw invalid_argument_error("bessel_j: non-finite argument");
  }
  double sign = 1.0;
  if (x < 0.0) {  // J_q(-x) = (-1)^q J_q(x)
    x = -x;
    if (order % 2 != 0) sign = -1.0;
  }
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 8.0) return sign * bessel_j_series(order, x);
  return sign * bessel_j_miller(order, x);
}

double bessel_i_scaled(int order, double x) {
  require_order(order);
  if (!std::isfinite(x) || x < 0.0) {
    throw invalid_argument_error(
        "bessel_i_scaled: argument must be finite and nonnegative");
  }
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 20.0) return bessel_i_scaled_series(order, x);
  return bessel_i_scaled_miller(order, x);
}

SpecFunResult bessel_i(int order, double x) {
  return {bessel_i_scaled(order, x), x};
}

double laguerre(int order, double x) {
  require_order(order);
  if (!std::isfinite(x)) {
    throw invalid_argument_error("laguerre: non-finite argument");
  }
  if (order == 0) return 1.0;
  double lm1 = 1.0;       // L_0
  double lk = 1.0 - x;    // L_1
  for (int k = 1; k < order; ++k) {
    const double lp1 = ((2.0 * k + 1.0 - x) * lk - k * lm1) / (k + 1.0);
    lm1 = lk;
    lk = lp1;
  }
  return lk;
}

double log_factorial(std::int64_t n) {
  if (n < 0) {
    throw invalid_argument_error("log_factorial: negative argument");
  }
  if (n > 1000000) {
    throw invalid_argument_error("log_factorial: argument exceeds 1e6");
  }
  if (n <= 1) return 0.0;
  return log_gamma(double(n) + 1.0);
}

}  // namespace pqov::specfun
