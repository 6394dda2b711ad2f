#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"
#include "states.hpp"

using namespace pqov;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

const states::OpticalConfig kDefaultCfg;  // 810 nm, 70 cm

double radial_modulus(const states::DerivedScales& scales, const states::VortexSpec& spec,
                      double r) {
  return std::abs(states::perfect_amplitude(scales, spec, {r, 0.0}));
}

// FWHM of the perfect-vortex radial modulus by bisection on both flanks.
double ring_fwhm(const states::VortexSpec& spec) {
  const auto scales = states::derive_scales(kDefaultCfg, spec);
  const double r_peak = states::ring_radius(scales, spec);
  const double half = 0.5 * radial_modulus(scales, spec, r_peak);
  auto flank = [&](double inside, double outside) {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (inside + outside);
      (radial_modulus(scales, spec, mid) > half ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  const double left = flank(r_peak, std::max(0.0, r_peak - 6.0));
  const double right = flank(r_peak, r_peak + 6.0);
  return right - left;
}

}  // namespace

TEST_CASE("derive_scales produces the documented constants") {
  const states::VortexSpec spec{15.0, 2};
  const auto s = states::derive_scales(kDefaultCfg, spec);
  CHECK(s.k == doctest::Approx(2.0 * pi / 810e-9).epsilon(1e-15));
  CHECK(s.sigma == doctest::Approx(1.2761983781526984e-07).epsilon(1e-12));
  CHECK(s.r_core == doctest::Approx(15.0 * s.sigma).epsilon(1e-15));
  CHECK(s.coeff_b == doctest::Approx(2.0 * s.r_core / (s.sigma * s.sigma)).epsilon(1e-15));
  CHECK(s.norm_n_sq == doctest::Approx(0.96039221954257689726).epsilon(1e-10));
  CHECK(std::isfinite(s.coeff_a_log));
}

TEST_CASE("derive_scales small-alpha limit of the norm") {
  const auto s = states::derive_scales(kDefaultCfg, {1e-6, 0});
  CHECK(s.norm_n_sq == doctest::Approx(1.0 / (4.0 * pi * pi)).epsilon(1e-9));
}

TEST_CASE("derive_scales range errors") {
  CHECK_THROWS_AS(states::derive_scales(kDefaultCfg, {15.0, 201}), unsupported_range_error);
  CHECK_THROWS_AS(states::derive_scales(kDefaultCfg, {23.0, 0}), unsupported_range_error);
  CHECK_THROWS_AS(states::derive_scales(kDefaultCfg, {-1.0, 0}), invalid_argument_error);
  CHECK_THROWS_AS(states::derive_scales({0.0, 0.7}, {15.0, 0}), invalid_argument_error);
}

TEST_CASE("pcs_fock_coefficients limits and direct-summation oracle") {
  const auto tiny = states::pcs_fock_coefficients({1e-8, 0}, 8);
  CHECK(tiny.c[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tiny.c[1] < 1e-7);
  CHECK(tiny.converged);

  const auto unit = states::pcs_fock_coefficients({1.0, 0}, 32);
  long double norm = 0.0L, fact = 1.0L;
  std::vector<long double> direct(32);
  for (int n = 0; n < 32; ++n) {
    if (n > 0) fact *= n;
    direct[n] = 1.0L / fact;  // alpha^n / sqrt(n! n!) = 1/n! at alpha=1, q=0
    norm += direct[n] * direct[n];
  }
  for (int n = 0; n < 32; ++n) {
    CHECK(unit.c[n] ==
          doctest::Approx(double(direct[n] / std::sqrt(norm))).epsilon(1e-12));
  }
}

TEST_CASE("pcs_fock_coefficients at alpha=15, q=2") {
  const auto fc = states::pcs_fock_coefficients({15.0, 2}, 1024);
  double sum = 0.0;
  int argmax = 0;
  for (int n = 0; n < 1024; ++n) {
    sum += fc.c[n] * fc.c[n];
    if (fc.c[n] > fc.c[argmax]) argmax = n;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  // Coefficient ratio c_{n+1}/c_n = alpha/sqrt((n+1)(n+q+1)) crosses 1 near
  // n ~ 14, so the peak sits there.
  CHECK(argmax >= 12);
  CHECK(argmax <= 16);
  for (int n : {0, 5, 14, 40, 200}) {
    const double ratio = fc.c[n + 1] / fc.c[n];
    CHECK(ratio == doctest::Approx(15.0 / std::sqrt((n + 1.0) * (n + 3.0))).epsilon(1e-10));
  }
  CHECK(fc.converged);
  CHECK(fc.tail_mass <= 1e-9);

  const auto small = states::pcs_fock_coefficients({15.0, 2}, 16);
  CHECK_FALSE(small.converged);
}

TEST_CASE("bg_amplitude dark core, origin value, and phase relation") {
  const states::VortexSpec q0{15.0, 0};
  const auto s0 = states::derive_scales(kDefaultCfg, q0);
  const cplx origin = states::bg_amplitude(s0, q0, {0.0, 0.0});
  CHECK(origin.imag() == 0.0);
  CHECK(origin.real() ==
        doctest::Approx(2.0 * std::sqrt(pi) * std::sqrt(s0.norm_n_sq)).epsilon(1e-13));

  for (int q : {1, 2, 5, 20}) {
    const states::VortexSpec spec{15.0, q};
    const auto s = states::derive_scales(kDefaultCfg, spec);
    CHECK(std::abs(states::bg_amplitude(s, spec, {0.0, 1.1})) == 0.0);
    // phase = q*phi + (pi/2)*q wherever J_q > 0
    const double rho = 0.9;  // J_q(sqrt(2)*15*0.9) sign varies; pick J>0 case
    if (specfun::bessel_j(q, std::sqrt(2.0) * 15.0 * rho) > 0.0) {
      for (double phi : {0.3, 2.0}) {
        const cplx v = states::bg_amplitude(s, spec, {rho, phi});
        double expected = std::fmod(q * phi + 0.5 * pi * q, 2.0 * pi);
        double got = std::arg(v);
        double diff = std::remainder(got - expected, 2.0 * pi);
        CHECK(std::abs(diff) < 1e-12);
      }
    }
  }
}

TEST_CASE("bg_amplitude agrees with the theta-integral oracle") {
  for (int q : {0, 1, 2, 5}) {
    const states::VortexSpec spec{15.0, q};
    const auto s = states::derive_scales(kDefaultCfg, spec);
    for (auto [x, y] : {std::pair{1.3 * std::cos(0.8), 1.3 * std::sin(0.8)},
                        {1.0, 0.5},
                        {0.25, -0.4},
                        {2.0, 0.0}}) {
      const cplx oracle = states::bg_theta_oracle(spec, x, y);
      double theta = std::atan2(y, x);
      if (theta < 0.0) theta += 2.0 * pi;
      const cplx direct = states::bg_amplitude(s, spec, {std::hypot(x, y), theta});
      CHECK(std::abs(direct - oracle) < 1e-8 * std::max(std::abs(direct), 1e-4));
    }
  }
}

TEST_CASE("bg_theta_oracle origin and sanity bound") {
  for (int q : {1, 2, 9}) {
    CHECK(std::abs(states::bg_theta_oracle({15.0, q}, 0.0, 0.0)) < 1e-10);
  }
  CHECK_THROWS_AS(states::bg_theta_oracle({15.0, 1}, 250.0, 0.0), invalid_argument_error);
}

TEST_CASE("bg normalization is exactly unity") {
  for (int q : {0, 1, 2, 5}) {
    for (double alpha : {1.0, 5.0, 15.0}) {
      const states::VortexSpec spec{alpha, q};
      const auto s = states::derive_scales(kDefaultCfg, spec);
      const int n = 200000;
      const double top = 14.0;
      double integral = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double rho = top * i / n;
        const double mod = std::abs(states::bg_amplitude(s, spec, {rho, 0.0}));
        const double term = mod * mod * rho;
        integral += (i == 0 || i == n) ? 0.5 * term : term;
      }
      integral *= 2.0 * pi * top / n;
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("perfect_amplitude dark core, unit norm, and phase winding") {
  for (int q : {1, 2, 20}) {
    const states::VortexSpec spec{15.0, q};
    const auto s = states::derive_scales(kDefaultCfg, spec);
    CHECK(std::abs(states::perfect_amplitude(s, spec, {0.0, 0.0})) == 0.0);
    const cplx base = states::perfect_amplitude(s, spec, {15.0, 0.7});
    const double dtheta = 0.35;
    const cplx rotated = states::perfect_amplitude(s, spec, {15.0, 0.7 + dtheta});
    CHECK(std::abs(rotated - base * std::exp(cplx(0.0, q * dtheta))) < 1e-12);
  }
  for (int q : {0, 2, 20}) {
    for (double alpha : {5.0, 15.0}) {
      const states::VortexSpec spec{alpha, q};
      const auto s = states::derive_scales(kDefaultCfg, spec);
      const int n = 200000;
      const double top = alpha + 14.0;
      double integral = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double r = top * i / n;
        const double mod = radial_modulus(s, spec, r);
        const double term = mod * mod * r;
        integral += (i == 0 || i == n) ? 0.5 * term : term;
      }
      integral *= 2.0 * pi * top / n;
      CHECK(integral == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("rotational symmetry of both families") {
  for (auto family : {states::StateFamily::bg, states::StateFamily::perfect}) {
    const states::VortexSpec spec{15.0, 3};
    const auto s = states::derive_scales(kDefaultCfg, spec);
    const double r = family == states::StateFamily::bg ? 1.1 : 15.2;
    double ref = 0.0;
    for (int m = 0; m < 256; ++m) {
      const double theta = 2.0 * pi * m / 256;
      const double mod = family == states::StateFamily::bg
                             ? std::abs(states::bg_amplitude(s, spec, {r, theta}))
                             : std::abs(states::perfect_amplitude(s, spec, {r, theta}));
      if (m == 0) ref = mod;
      CHECK(std::abs(mod - ref) < 1e-12 * ref);
    }
  }
}

TEST_CASE("amplitude_grid metadata, determinism, and validation") {
  const states::Axis ax{"x", -21.0, 21.0, 64};
  const auto a = states::amplitude_grid(states::StateFamily::perfect, kDefaultCfg, {15.0, 2},
                                        ax, ax, 1);
  const auto b = states::amplitude_grid(states::StateFamily::perfect, kDefaultCfg, {15.0, 2},
                                        ax, ax, 3);
  CHECK(a.values == b.values);
  CHECK(a.meta.at("state") == "perfect");
  CHECK(a.meta.at("charge") == "2");
  CHECK(a.meta.count("sigma_m") == 1);
  CHECK(a.meta.count("r_core_m") == 1);
  const states::Axis bad{"x", -1.0, 1.0, 8};
  CHECK_THROWS_AS(states::amplitude_grid(states::StateFamily::bg, kDefaultCfg, {15.0, 0}, bad,
                                         ax, 1),
                  invalid_argument_error);
}

TEST_CASE("phase grid of q=0 is constant") {
  const states::Axis ax{"x", -21.0, 21.0, 64};
  const auto field =
      states::amplitude_grid(states::StateFamily::perfect, kDefaultCfg, {15.0, 0}, ax, ax, 1);
  double max_dev = 0.0;
  const double ref = std::arg(field.at(32, 32));
  for (const auto& v : field.values) {
    if (std::abs(v) > 1e-12) {
      max_dev = std::max(max_dev, std::abs(std::remainder(std::arg(v) - ref, 2.0 * pi)));
    }
  }
  CHECK(max_dev < 1e-12);
}

TEST_CASE("count_phase_jumps returns the winding number") {
  const states::Axis ax{"x", -21.0, 21.0, 301};
  for (int q : {0, 1, 2, 10}) {
    const auto field = states::amplitude_grid(states::StateFamily::perfect, kDefaultCfg,
                                              {15.0, q}, ax, ax, 0);
    CHECK(states::count_phase_jumps(field, 15.0) == q);
  }
}

TEST_CASE("count_phase_jumps degenerate and out-of-grid circles") {
  const states::Axis ax{"x", -21.0, 21.0, 301};
  const auto field =
      states::amplitude_grid(states::StateFamily::perfect, kDefaultCfg, {15.0, 2}, ax, ax, 0);
  CHECK_THROWS_AS(states::count_phase_jumps(field, 0.05), degenerate_circle_error);
  CHECK_THROWS_AS(states::count_phase_jumps(field, 30.0), invalid_argument_error);
  CHECK_THROWS_AS(states::count_phase_jumps(field, -1.0), invalid_argument_error);
}

TEST_CASE("phase linearity along a modulus-positive circle") {
  const states::VortexSpec spec{15.0, 7};
  const auto s = states::derive_scales(kDefaultCfg, spec);
  double prev = std::arg(states::perfect_amplitude(s, spec, {15.0, 0.0}));
  double acc = prev;
  double worst = 0.0;
  const int samples = 720;
  for (int m = 1; m <= samples; ++m) {
    const double theta = 2.0 * pi * m / samples;
    const double cur = std::arg(states::perfect_amplitude(s, spec, {15.0, theta}));
    acc += std::remainder(cur - prev, 2.0 * pi);
    prev = cur;
    const double expected = std::arg(states::perfect_amplitude(s, spec, {15.0, 0.0})) +
                            7.0 * theta;
    worst = std::max(worst, std::abs(acc - expected));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("ring radius is charge-independent while the bg core is not") {
  const auto s10 = states::derive_scales(kDefaultCfg, {15.0, 10});
  CHECK(states::ring_radius(s10, {15.0, 10}) ==
        doctest::Approx(14.98702755).epsilon(1e-4));

  std::vector<double> rings;
  for (int q : {1, 10, 15, 20}) {
    const auto s = states::derive_scales(kDefaultCfg, {15.0, q});
    rings.push_back(states::ring_radius(s, {15.0, q}));
  }
  const double lo = *std::min_element(rings.begin(), rings.end());
  const double hi = *std::max_element(rings.begin(), rings.end());
  CHECK((hi - lo) / lo < 0.03);

  CHECK(states::bg_core_radius({15.0, 0}) == 0.0);
  CHECK(states::bg_core_radius({15.0, 1}) == doctest::Approx(0.0865215883).epsilon(1e-5));
  CHECK(states::bg_core_radius({15.0, 20}) == doctest::Approx(1.0347724182).epsilon(1e-5));
  double prev = 0.0;
  for (int q : {1, 2, 10, 20}) {
    const double core = states::bg_core_radius({15.0, q});
    CHECK(core > prev);
    prev = core;
  }
}

TEST_CASE("ring width stays constant across charge") {
  std::vector<double> widths;
  for (int q : {1, 10, 15, 20}) {
    widths.push_back(ring_fwhm({15.0, q}));
  }
  const double lo = *std::min_element(widths.begin(), widths.end());
  const double hi = *std::max_element(widths.begin(), widths.end());
  CHECK((hi - lo) / lo < 0.05);
}
