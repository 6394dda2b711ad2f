#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "states.hpp"

namespace pqov::wigner {

// Dimensionless phase-space point: positions in units of sigma, momenta in
// units of 1/sigma.
struct PhaseSpacePoint {
  double x = 0.0, y = 0.0, px = 0.0, py = 0.0;
};

enum class Plane { xy, x_px, x_py, y_py, y_px, px_py };
enum class Method { analytic, definition };

Plane parse_plane(const std::string& name);
std::string plane_name(Plane plane);

// Tensor Gauss-Legendre settings for the definition integral over the
// separation variables (R1, R2) in [-half_width, half_width]^2.
// Zero fields are auto-sized from alpha and the slice's momentum extent.
struct QuadSpec {
  int nodes = 0;
  double half_width = 0.0;
};

QuadSpec resolve_quad(const states::VortexSpec& spec, double momentum_extent,
                      const QuadSpec& requested);

// Real 2-D slice of the 4-D Wigner function. Values are stored axis2-major,
// matching ComplexField2D. For the analytic method, values carry a common
// factor exp(log_scale) recorded in meta (the closed form overflows doubles).
struct WignerSlice {
  Plane plane = Plane::x_py;
  Method method = Method::definition;
  states::Axis axis1, axis2;
  double fixed1 = 0.0, fixed2 = 0.0;  // the two held coordinates, plane order
  std::vector<double> values;
  std::map<std::string, std::string> meta;

  double& at(int i1, int i2) { return values[std::size_t(i2) * axis1.count + i1]; }
  double at(int i1, int i2) const { return values[std::size_t(i2) * axis1.count + i1]; }
};

struct NegativityEntry {
  int charge = 0;
  double n_value = 0.0;
  bool ok = false;
  std::string error;
};

struct NegativityCurve {
  std::vector<NegativityEntry> entries;
  std::map<std::string, std::string> meta;
};

// sign * exp(log_abs); sign is 0 for an exact zero.
struct SignedLog {
  double sign = 0.0;
  double log_abs = 0.0;

  double to_double() const;
};

// Unit-normalized perfect-vortex amplitude with a fine radial lookup table;
// valid for radii up to r_max (returns 0 beyond the Gaussian ring tail).
class TwoModeState {
 public:
  TwoModeState(const states::OpticalConfig& cfg, const states::VortexSpec& spec, double r_max);

  double radial(double r) const;
  std::complex<double> amplitude(double x, double y) const;
  int charge() const { return charge_; }
  double alpha() const { return alpha_; }

 private:
  int charge_;
  double alpha_;
  double step_;
  double r_max_;
  std::vector<double> table_;
};

// Closed-form two-mode Wigner function, transcribed as printed (including the
// sum-of-factorials factor and the I_q argument), evaluated in log space.
SignedLog wigner_analytic_log(const states::DerivedScales& scales,
                              const states::VortexSpec& spec, const PhaseSpacePoint& p);
double wigner_analytic(const states::DerivedScales& scales, const states::VortexSpec& spec,
                       const PhaseSpacePoint& p);

struct DefResult {
  double value = 0.0;
  double imag_abs = 0.0;  // residual imaginary part, ideally 0
};

// Defining integral (1/4pi^2) int psi(r+R/2) psi*(r-R/2) e^{i R.p} d^2R by
// tensor Gauss-Legendre quadrature.
DefResult wigner_definition(const TwoModeState& psi, const PhaseSpacePoint& p,
                            const QuadSpec& quad);

// Same, with node doubling; accuracy error if the relative change exceeds 1e-6.
double wigner_definition_checked(const TwoModeState& psi, const PhaseSpacePoint& p,
                                 const QuadSpec& quad);

// int int W dpx dpy over [-p_box, p_box]^2 at fixed (x, y); converges to
// |psi(x,y)|^2 as p_box grows (marginal property).
double marginal_pxpy(const TwoModeState& psi, double x, double y, double p_box,
                     const QuadSpec& quad);

WignerSlice wigner_slice(const states::OpticalConfig& cfg, const states::VortexSpec& spec,
                         Plane plane, double fixed1, double fixed2, const states::Axis& axis1,
                         const states::Axis& axis2, Method method, const QuadSpec& quad = {},
                         int threads = 0);

// (1/2) int int |W| da1 da2 - 1 over the slice, by 2-D trapezoid in the
// dimensionless coordinates. Requires the slice to have decayed at its border.
double negativity_volume(const WignerSlice& slice);

// One negativity_volume per charge over the x-p_y slice at y=0, p_x=0.
// Per-charge failures are recorded in the entry, not thrown.
NegativityCurve negativity_scan(const states::OpticalConfig& cfg, double alpha, int q_min,
                                int q_max, Method method, int grid_count, double extent,
                                const QuadSpec& quad = {}, int threads = 0);

}  // namespace pqov::wigner
