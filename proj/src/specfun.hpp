#pragma once

#include <cstdint>

namespace pqov::specfun {

// Highest Bessel/Laguerre order accepted by this module.
inline constexpr int kMaxOrder = 200;

// Value plus natural-log prefactor: true function = value * exp(log_scale).
// log_scale is 0 unless a scaled variant was requested.
struct SpecFunResult {
  double value = 0.0;
  double log_scale = 0.0;
};

// Bessel function of the first kind J_q(x).
// Absolute error <= 1e-12 for |x| <= 500, 0 <= q <= kMaxOrder.
// J_q(-x) = (-1)^q J_q(x) holds exactly by construction.
double bessel_j(int order, double x);

// Exponentially scaled modified Bessel function e^{-x} I_q(x), x >= 0.
// Bounded in (0, 1] for order 0 and [0, 1) for order >= 1; the unscaled
// I_q (which overflows for x ~ 225 already) is never exposed.
double bessel_i_scaled(int order, double x);

// Scaled value together with the analytic exponent: I_q(x) = value * exp(log_scale).
SpecFunResult bessel_i(int order, double x);

// Laguerre polynomial L_q(x) by the three-term recurrence.
double laguerre(int order, double x);

// ln(n!), relative error <= 1e-13, 0 <= n <= 1e6.
double log_factorial(std::int64_t n);

}  // namespace pqov::specfun
