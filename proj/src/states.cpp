#include "states.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "errors.hpp"
#include "parallel.hpp"
#include "specfun.hpp"

namespace pqov::states {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

constexpr cplx kImag{0.0, 1.0};

// i^q without trig roundoff.
cplx unit_imag_pow(int q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void validate(const OpticalConfig& cfg) {
  if (!(cfg.wavelength > 0.0) || !std::isfinite(cfg.wavelength) ||
      !(cfg.focal_length > 0.0) || !std::isfinite(cfg.focal_length)) {
    throw invalid_argument_error("OpticalConfig: wavelength and focal_length must be positive");
  }
}

void validate(const VortexSpec& spec) {
  if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) {
    throw invalid_argument_error("VortexSpec: alpha must be positive and finite");
  }
  if (spec.charge < 0) {
    throw invalid_argument_error("VortexSpec: charge must be >= 0");
  }
  if (spec.charge > specfun::kMaxOrder || spec.alpha * spec.alpha > 500.0) {
    throw unsupported_range_error(
        "VortexSpec: q > 200 or alpha^2 > 500 is outside the validated special-function domain");
  }
}

void validate(const PhasePoint& p) {
  if (!(p.r >= 0.0) || !std::isfinite(p.r) || !std::isfinite(p.theta)) {
    throw invalid_argument_error("PhasePoint: r must be >= 0 and theta finite");
  }
}

// Radial modulus factor of the perfect vortex (constants dropped).
double perfect_radial_shape(int q, double alpha, double r) {
  const double d = r - alpha;
  return std::exp(-d * d) * specfun::bessel_i_scaled(q, 2.0 * alpha * r);
}

// Golden-section maximization of a unimodal profile on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace

DerivedScales derive_scales(const OpticalConfig& cfg, const VortexSpec& spec) {
  validate(cfg);
  validate(spec);
  DerivedScales s;
  s.k = 2.0 * pi / cfg.wavelength;
  s.sigma = std::sqrt(2.0) * cfg.focal_length / s.k;
  s.r_core = spec.alpha * s.sigma;
  s.coeff_b = 2.0 * s.r_core / (s.sigma * s.sigma);
  const double a2 = spec.alpha * spec.alpha;
  const double iq_scaled = specfun::bessel_i_scaled(spec.charge, a2);
  // N^2 = 1/(4 pi^2 e^{-a^2} I_q(a^2)); the scaled Bessel keeps it finite.
  s.norm_n_sq = 1.0 / (4.0 * pi * pi * iq_scaled);
  const double log_n = 0.5 * std::log(s.norm_n_sq);
  s.coeff_a_log = log_n + std::log(2.0 * std::sqrt(2.0) * pi) - std::log(s.sigma) - a2;
  if (!std::isfinite(s.norm_n_sq) || !std::isfinite(s.coeff_a_log)) {
    throw unsupported_range_error("derive_scales: non-finite derived constant");
  }
  return s;
}

FockCoefficients pcs_fock_coefficients(const VortexSpec& spec, int cutoff) {
  validate(spec);
  if (cutoff < 1) {
    throw invalid_argument_error("pcs_fock_coefficients: cutoff must be >= 1");
  }
  const int q = spec.charge;
  const double log_alpha = std::log(spec.alpha);
  std::vector<double> log_a(cutoff);
  double peak = -HUGE_VAL;
  for (int n = 0; n < cutoff; ++n) {
    log_a[n] = n * log_alpha -
               0.5 * (specfun::log_factorial(n) + specfun::log_factorial(n + q));
    peak = std::max(peak, log_a[n]);
  }
  FockCoefficients out;
  out.c.resize(cutoff);
  double sum_sq = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    out.c[n] = std::exp(log_a[n] - peak);
    sum_sq += out.c[n] * out.c[n];
  }
  const double inv_norm = 1.0 / std::sqrt(sum_sq);
  for (double& v : out.c) v *= inv_norm;
  // Tail estimate from the coefficient ratio at the cutoff.
  const double ratio = spec.alpha / std::sqrt(double(cutoff) * (cutoff + q));
  if (ratio < 1.0) {
    const double last = out.c.back();
    const double r2 = ratio * ratio;
    out.tail_mass = last * last * r2 / (1.0 - r2);
  } else {
    out.tail_mass = 1.0;  // cutoff below the coefficient peak; no useful bound
  }
  out.converged = out.tail_mass <= 1e-9;
  return out;
}

std::complex<double> bg_amplitude(const DerivedScales& scales, const VortexSpec& spec,
                                  const PhasePoint& p) {
  validate(p);
  const int q = spec.charge;
  const double n = std::sqrt(scales.norm_n_sq);
  const double radial = 2.0 * std::sqrt(pi) * n * std::exp(-0.5 * p.r * p.r) *
                        specfun::bessel_j(q, std::sqrt(2.0) * spec.alpha * p.r);
  return radial * unit_imag_pow(q) * std::exp(kImag * (double(q) * p.theta));
}

std::complex<double> bg_theta_oracle(const VortexSpec& spec, double x, double y) {
  validate(spec);
  const double bound = 10.0 * (spec.alpha + 5.0);
  if (std::abs(x) > bound || std::abs(y) > bound) {
    throw invalid_argument_error("bg_theta_oracle: point outside sanity bound");
  }
  const int q = spec.charge;
  const double a2 = spec.alpha * spec.alpha;
  const double n = 1.0 / (2.0 * pi * std::sqrt(specfun::bessel_i_scaled(q, a2)));
  // Coherent amplitudes on the imaginary axis (beta1 = i a cos t, beta2 = i a sin t)
  // reproduce the cylindrical closed form; see the module tests.
  const double rho2 = x * x + y * y;
  const double envelope = n * std::exp(-0.5 * rho2) / std::sqrt(pi);
  const double c = std::sqrt(2.0) * spec.alpha;

  auto integrate = [&](int nodes) {
    cplx acc{0.0, 0.0};
    const double h = 2.0 * pi / nodes;
    for (int j = 0; j < nodes; ++j) {
      const double t = h * j;
      acc += std::exp(kImag * (q * t + c * (x * std::cos(t) + y * std::sin(t))));
    }
    return acc * h;
  };

  int nodes = 8 * (q + int(std::ceil(spec.alpha)) + 16);
  cplx prev = integrate(nodes);
  for (int pass = 0; pass < 8; ++pass) {
    nodes *= 2;
    const cplx next = integrate(nodes);
    const double change = std::abs(next - prev);
    if (change <= 1e-8 * std::max(std::abs(next), 1e-6)) {
      return envelope * next;
    }
    prev = next;
  }
  throw accuracy_error("bg_theta_oracle: theta integral did not converge under node doubling");
}

std::complex<double> perfect_amplitude(const DerivedScales& scales, const VortexSpec& spec,
                                       const PhasePoint& p) {
  validate(p);
  const int q = spec.charge;
  const double a2 = spec.alpha * spec.alpha;
  // K = 2*sqrt(2*pi)*N = sqrt(2/pi)/sqrt(e^{-a^2} I_q(a^2)); the global -i
  // comes out of the lens transform's k/(2*pi*i*f) prefactor.
  const double kmod = std::sqrt(2.0 / pi) / std::sqrt(specfun::bessel_i_scaled(q, a2));
  const double radial = kmod * perfect_radial_shape(q, spec.alpha, p.r);
  return radial * (-kImag) * std::exp(kImag * (double(q) * p.theta));
}

ComplexField2D amplitude_grid(StateFamily family, const OpticalConfig& cfg,
                              const VortexSpec& spec, const Axis& axis1, const Axis& axis2,
                              int threads) {
  validate(cfg);
  validate(spec);
  if (axis1.count < 16 || axis2.count < 16) {
    throw invalid_argument_error("amplitude_grid: axis counts must be >= 16");
  }
  const DerivedScales scales = derive_scales(cfg, spec);

  ComplexField2D field;
  field.axis1 = axis1;
  field.axis2 = axis2;
  field.values.resize(std::size_t(axis1.count) * axis2.count);
  field.meta["state"] = family == StateFamily::bg ? "bg" : "perfect";
  field.meta["charge"] = std::to_string(spec.charge);
  field.meta["alpha"] = fmt(spec.alpha);
  field.meta["wavelength_m"] = fmt(cfg.wavelength);
  field.meta["focal_length_m"] = fmt(cfg.focal_length);
  field.meta["sigma_m"] = fmt(scales.sigma);
  field.meta["r_core_m"] = fmt(scales.r_core);
  field.meta["units"] = "sigma";

  std::mutex err_mutex;
  std::string err;
  parallel_for(axis2.count, threads, [&](int i2) {
    try {
      const double y = axis2.value(i2);
      for (int i1 = 0; i1 < axis1.count; ++i1) {
        const double x = axis1.value(i1);
        double theta = std::atan2(y, x);
        if (theta < 0.0) theta += 2.0 * pi;
        const PhasePoint p{std::hypot(x, y), theta};
        field.at(i1, i2) = family == StateFamily::bg ? bg_amplitude(scales, spec, p)
                                                     : perfect_amplitude(scales, spec, p);
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(err_mutex);
      if (err.empty()) err = "amplitude_grid: row " + std::to_string(i2) + ": " + e.what();
    }
  });
  if (!err.empty()) throw accuracy_error(err);
  return field;
}

int count_phase_jumps(const ComplexField2D& field, double circle_radius) {
  if (!(circle_radius > 0.0)) {
    throw invalid_argument_error("count_phase_jumps: radius must be positive");
  }
  const Axis& ax = field.axis1;
  const Axis& ay = field.axis2;
  if (circle_radius < std::max(ax.min, ay.min) || circle_radius > std::min(ax.max, ay.max) ||
      -circle_radius < std::max(ax.min, ay.min)) {
    throw invalid_argument_error("count_phase_jumps: circle does not lie inside the grid");
  }

  double grid_max = 0.0;
  for (const auto& v : field.values) grid_max = std::max(grid_max, std::abs(v));
  const double floor = 1e-12 * grid_max;

  int q_hint = 0;
  if (auto it = field.meta.find("charge"); it != field.meta.end()) {
    q_hint = std::stoi(it->second);
  }
  const int samples = std::max(64 * (q_hint + 1), 256);

  auto interpolate = [&](double x, double y) {
    const double fx = (x - ax.min) / (ax.max - ax.min) * (ax.count - 1);
    const double fy = (y - ay.min) / (ay.max - ay.min) * (ay.count - 1);
    const int i = std::min(int(fx), ax.count - 2);
    const int j = std::min(int(fy), ay.count - 2);
    const double tx = fx - i, ty = fy - j;
    return (1 - tx) * (1 - ty) * field.at(i, j) + tx * (1 - ty) * field.at(i + 1, j) +
           (1 - tx) * ty * field.at(i, j + 1) + tx * ty * field.at(i + 1, j + 1);
  };

  std::vector<double> phase(samples);
  for (int m = 0; m < samples; ++m) {
    const double t = 2.0 * pi * m / samples;
    const cplx v = interpolate(circle_radius * std::cos(t), circle_radius * std::sin(t));
    if (std::abs(v) < floor) {
      throw degenerate_circle_error(
          "count_phase_jumps: modulus below noise floor on the sampling circle");
    }
    phase[m] = std::arg(v);
  }
  double total = 0.0;
  for (int m = 0; m < samples; ++m) {
    double d = phase[(m + 1) % samples] - phase[m];
    while (d > pi) d -= 2.0 * pi;
    while (d <= -pi) d += 2.0 * pi;
    total += d;
  }
  return int(std::lround(total / (2.0 * pi)));
}

double ring_radius(const DerivedScales& scales, const VortexSpec& spec) {
  (void)scales;
  validate(spec);
  const int q = spec.charge;
  const double alpha = spec.alpha;
  auto shape = [&](double r) { return perfect_radial_shape(q, alpha, r); };

  const double lo = std::max(0.0, alpha - 6.0);
  const double hi = alpha + 6.0;
  const int steps = 241;
  int best = -1;
  double best_val = -1.0;
  for (int i = 0; i < steps; ++i) {
    const double r = lo + (hi - lo) * i / (steps - 1);
    const double v = shape(r);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (best <= 0 || best >= steps - 1) {
    throw accuracy_error("ring_radius: radial profile has no interior maximum in the bracket");
  }
  const double h = (hi - lo) / (steps - 1);
  const double a = lo + h * (best - 1);
  const double b = lo + h * (best + 1);
  return golden_max(shape, a, b, 1e-5);
}

double bg_core_radius(const VortexSpec& spec) {
  validate(spec);
  const int q = spec.charge;
  if (q == 0) return 0.0;
  const double c = std::sqrt(2.0) * spec.alpha;
  auto shape = [&](double rho) {
    return std::exp(-0.5 * rho * rho) * std::abs(specfun::bessel_j(q, c * rho));
  };
  // First maximum of J_q sits near q + 0.81 q^{1/3} in the Bessel argument.
  const double rho_hi = (q + 6.0 + 2.0 * std::cbrt(double(q))) / c;
  const double h = 0.02 / c;
  double prev2 = shape(0.0), prev1 = shape(h);
  for (double rho = 2 * h; rho <= rho_hi; rho += h) {
    const double cur = shape(rho);
    if (prev1 > prev2 && prev1 >= cur) {
      return golden_max(shape, rho - 2 * h, rho, 1e-7);
    }
    prev2 = prev1;
    prev1 = cur;
  }
  throw accuracy_error("bg_core_radius: no radial maximum found");
}

}  // namespace pqov::states
