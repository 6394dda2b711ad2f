#include "selftest.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include "lensft.hpp"
#include "specfun.hpp"
#include "states.hpp"
#include "wigner.hpp"

namespace pqov::selftest {

namespace {

using std::numbers::pi;

struct Check {
  std::string name;
  bool passed;
  double measure;  // worst deviation observed
};

void add(std::vector<Check>& checks, const std::string& name, double deviation, double tol) {
  checks.push_back({name, deviation <= tol, deviation});
}

double bessel_recurrence_deviation(double perturbation) {
  // J_{q-1}(x) + J_{q+1}(x) = (2q/x) J_q(x), and the same with a minus sign
  // for the scaled modified Bessel (the e^{-x} factor cancels).
  double worst = 0.0;
  for (int q : {1, 2, 5, 20, 60}) {
    for (double x : {0.7, 3.0, 12.5, 40.0, 180.0}) {
      const double jm = specfun::bessel_j(q - 1, x) + perturbation;
      const double j0 = specfun::bessel_j(q, x) + perturbation;
      const double jp = specfun::bessel_j(q + 1, x) + perturbation;
      worst = std::max(worst, std::abs(jm + jp - 2.0 * q / x * j0));
      const double im = specfun::bessel_i_scaled(q - 1, x) + perturbation;
      const double i0 = specfun::bessel_i_scaled(q, x) + perturbation;
      const double ip = specfun::bessel_i_scaled(q + 1, x) + perturbation;
      worst = std::max(worst, std::abs(im - ip - 2.0 * q / x * i0));
    }
  }
  return worst;
}

double lens_equivalence_deviation(int q, int threads) {
  (void)threads;
  const states::OpticalConfig cfg;
  const states::VortexSpec spec{15.0, q};
  const states::DerivedScales scales = states::derive_scales(cfg, spec);
  std::vector<double> r_out;
  for (int i = 0; i < 24; ++i) r_out.push_back(30.0 * i / 23.0);
  const auto transformed = lensft::lens_transform(lensft::bg_profile(spec), cfg, r_out);
  double peak = 0.0;
  for (const auto& v : transformed) peak = std::max(peak, std::abs(v));
  double worst = 0.0;
  for (std::size_t i = 0; i < r_out.size(); ++i) {
    const auto expected = states::perfect_amplitude(scales, spec, {r_out[i], 0.0});
    worst = std::max(worst, std::abs(transformed[i] - expected) / peak);
  }
  return worst;
}

}  // namespace

Report run(const Options& options) {
  std::vector<Check> checks;

  add(checks, "bessel_recurrence", bessel_recurrence_deviation(options.bessel_perturbation),
      1e-11);
  add(checks, "lens_equivalence_q0", lens_equivalence_deviation(0, options.threads), 1e-6);
  add(checks, "lens_equivalence_q2", lens_equivalence_deviation(2, options.threads), 1e-6);

  const states::OpticalConfig cfg;
  const states::VortexSpec q2{15.0, 2};
  {
    const wigner::TwoModeState psi(cfg, q2, 36.0);
    const wigner::QuadSpec quad{220, 42.0};
    const wigner::DefResult origin = wigner::wigner_definition(psi, {0, 0, 0, 0}, quad);
    add(checks, "wigner_reality_origin", origin.imag_abs, 1e-10);
    // Two-mode parity at the origin: W(0) = (-1)^q / pi^2.
    add(checks, "wigner_parity_origin", std::abs(origin.value - 1.0 / (pi * pi)), 1e-6);
    // The sinc weights oscillate at the box momentum; needs more nodes than
    // the zero-momentum checks above.
    const double marginal = wigner::marginal_pxpy(psi, 15.0, 0.0, 8.0, {320, 42.0});
    const double density = std::norm(psi.amplitude(15.0, 0.0));
    add(checks, "wigner_marginal_ring", std::abs(marginal - density) / density, 1e-4);
  }
  {
    const states::Axis ax{"x", -21.0, 21.0, 181};
    const auto field = states::amplitude_grid(states::StateFamily::perfect, cfg, {15.0, 1}, ax,
                                              ax, options.threads);
    const int jumps = states::count_phase_jumps(field, 15.0);
    add(checks, "phase_count_q1", std::abs(jumps - 1), 0.0);
  }

  Report report;
  report.all_passed = true;
  report.text = "check                     status  deviation\n";
  for (const Check& c : checks) {
    char line[128];
    std::snprintf(line, sizeof line, "%-25s %-7s %.3e\n", c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", c.measure);
    report.text += line;
    report.all_passed = report.all_passed && c.passed;
  }
  report.text += report.all_passed ? "selftest: all checks passed\n"
                                   : "selftest: FAILURES detected\n";
  return report;
}

}  // namespace pqov::selftest
