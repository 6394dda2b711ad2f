#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "states.hpp"

namespace pqov::lensft {

// Radial factor of a field whose angular dependence is exactly e^{iq phi}.
struct RadialProfile {
  std::function<std::complex<double>(double)> evaluator;  // rho (sigma units) -> complex
  int charge = 0;
  std::map<std::string, std::string> meta;
};

// Lens Fourier transform in sigma-scaled coordinates. The angular integral is
// done analytically, leaving h(r) = sqrt(2) (-i)^{q+1} int_0^{Rmax}
// g(rho) J_q(sqrt(2) rho r) rho drho; the e^{iq theta} carrier is excluded.
// Composite Gauss-Legendre panels sized to the kernel oscillation, validated
// by per-point node doubling to 1e-8 relative.
std::vector<std::complex<double>> lens_transform(const RadialProfile& profile,
                                                 const states::OpticalConfig& cfg,
                                                 const std::vector<double>& r_out,
                                                 double r_max = 0.0);

// Direct 2-D quadrature of the same transform (trapezoid in phi, panels in
// rho), kept only to validate the analytic angular reduction.
std::vector<std::complex<double>> lens_transform_2d(const RadialProfile& profile,
                                                    const states::OpticalConfig& cfg,
                                                    const std::vector<double>& r_out,
                                                    double r_max = 0.0);

// (output 2-D energy)/(input 2-D energy), both including the 2*pi angular
// factor. Within 1e-3 of 1 when the profile has decayed by r_max.
double energy_ratio(const RadialProfile& profile_in,
                    const std::vector<std::complex<double>>& values_out,
                    const std::vector<double>& r_out, double r_max = 0.0);

// BG radial factor as a RadialProfile (angular carrier stripped).
RadialProfile bg_profile(const states::VortexSpec& spec);

double default_r_max(const RadialProfile& profile);

}  // namespace pqov::lensft
