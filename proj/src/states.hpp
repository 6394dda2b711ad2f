#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pqov::states {

// Physical lens / wavelength inputs, in meters.
struct OpticalConfig {
  double wavelength = 810e-9;
  double focal_length = 0.70;
};

// Dimensionless coherent amplitude and integer topological charge.
struct VortexSpec {
  double alpha = 15.0;
  int charge = 0;
};

// Constants derived from (OpticalConfig, VortexSpec); every formula in the
// state and Wigner evaluators consumes these rather than re-deriving them.
struct DerivedScales {
  double k = 0.0;            // wave vector 2*pi/lambda, 1/m
  double sigma = 0.0;        // sqrt(2)*f/k, m
  double r_core = 0.0;       // alpha*sigma, m
  double norm_n_sq = 0.0;    // N^2 = 1/(4 pi^2 e^{-a^2} I_q(a^2)), dimensionless
  double coeff_a_log = 0.0;  // ln|A|, A = N*2*sqrt(2)*pi/sigma * exp(-r_c^2/sigma^2)
  double coeff_b = 0.0;      // 2*r_core/sigma^2, 1/m
};

// Polar point in sigma-scaled (dimensionless) quadrature coordinates.
struct PhasePoint {
  double r = 0.0;      // >= 0
  double theta = 0.0;  // [0, 2*pi)
};

struct Axis {
  std::string label;
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double value(int i) const { return min + (max - min) * i / (count - 1); }
};

// Rectangular grid of complex amplitudes. Values are stored axis2-major
// (outer loop axis2, inner loop axis1), matching the CSV row order.
struct ComplexField2D {
  Axis axis1, axis2;
  std::vector<std::complex<double>> values;
  std::map<std::string, std::string> meta;

  std::complex<double>& at(int i1, int i2) { return values[std::size_t(i2) * axis1.count + i1]; }
  const std::complex<double>& at(int i1, int i2) const {
    return values[std::size_t(i2) * axis1.count + i1];
  }
};

enum class StateFamily { bg, perfect };

struct FockCoefficients {
  std::vector<double> c;   // normalized so sum c_n^2 = 1 over the truncation
  double tail_mass = 0.0;  // estimated probability mass beyond the cutoff
  bool converged = true;   // false if tail_mass > 1e-9
};

DerivedScales derive_scales(const OpticalConfig& cfg, const VortexSpec& spec);

// Fock coefficients of the pair coherent state |zeta,q> (zeta = alpha, real).
FockCoefficients pcs_fock_coefficients(const VortexSpec& spec, int cutoff);

// Bessel-Gauss vortex quadrature amplitude at a dimensionless polar point:
// 2 i^q sqrt(pi) N exp(-r^2/2) J_q(sqrt(2) alpha r) exp(i q theta).
std::complex<double> bg_amplitude(const DerivedScales& scales, const VortexSpec& spec,
                                  const PhasePoint& p);

// Independent oracle for bg_amplitude: numerically integrates the coherent
// state superposition over theta (trapezoid with node doubling).
std::complex<double> bg_theta_oracle(const VortexSpec& spec, double x, double y);

// Perfect-vortex quadrature amplitude (sigma-scaled), evaluated in log space:
// -i * 2*sqrt(2*pi) N exp(-(r-alpha)^2) [e^{-z} I_q](2 alpha r) exp(i q theta).
std::complex<double> perfect_amplitude(const DerivedScales& scales, const VortexSpec& spec,
                                       const PhasePoint& p);

// Fills a grid of amplitudes over dimensionless (x/sigma, y/sigma).
// Deterministic and independent of the thread count.
ComplexField2D amplitude_grid(StateFamily family, const OpticalConfig& cfg,
                              const VortexSpec& spec, const Axis& axis1, const Axis& axis2,
                              int threads = 0);

// Total phase winding (in units of 2*pi) along a circle of the given
// dimensionless radius, by sampling and unwrapping the interpolated phase.
int count_phase_jumps(const ComplexField2D& field, double circle_radius);

// Radius (in sigma units) of the perfect-vortex ring: argmax of the radial
// modulus profile, located by bracketing + golden-section search.
double ring_radius(const DerivedScales& scales, const VortexSpec& spec);

// First local maximum (in dimensionless rho) of the BG radial modulus;
// marks the edge of the BG dark core.
double bg_core_radius(const VortexSpec& spec);

}  // namespace pqov::states
