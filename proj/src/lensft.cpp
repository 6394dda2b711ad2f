#include "lensft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace pqov::lensft {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;
constexpr cplx kImag{0.0, 1.0};
constexpr double kSqrt2 = std::numbers::sqrt2;

cplx unit_imag_pow(int q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double resolve_r_max(const RadialProfile& profile, double r_max) {
  return r_max > 0.0 ? r_max : default_r_max(profile);
}

// Checks the truncation precondition and returns int |g(rho)| rho drho, the
// natural magnitude scale of the transform (cancellation can make individual
// output values arbitrarily small, so convergence needs an absolute floor).
double check_decay(const RadialProfile& profile, double r_max) {
  double peak = 0.0;
  double scale = 0.0;
  const int samples = 4096;
  const double h = r_max / samples;
  for (int i = 0; i <= samples; ++i) {
    const double rho = h * i;
    const double mod = std::abs(profile.evaluator(rho));
    peak = std::max(peak, mod);
    scale += (i == 0 || i == samples) ? 0.5 * mod * rho : mod * rho;
  }
  scale *= h;
  if (peak == 0.0) {
    throw invalid_argument_error("lens_transform: profile is identically zero");
  }
  if (std::abs(profile.evaluator(r_max)) > 1e-14 * peak) {
    throw truncation_error("lens_transform: profile has not decayed below 1e-14 of its "
                           "maximum by r_max");
  }
  return scale;
}

// Panel width: at most one kernel oscillation 2*pi/(sqrt(2) r) per panel.
int panel_count(double r_max, double r) {
  const double w0 = std::min(1.0, 2.0 * pi / (kSqrt2 * std::max(r, 1e-9)));
  return std::max(1, int(std::ceil(r_max / w0)));
}

// int_0^{r_max} g(rho) J_q(sqrt(2) rho r) rho drho over fixed panels with
// n Gauss-Legendre nodes each.
cplx radial_integral(const RadialProfile& profile, double r, double r_max, int panels,
                     const GaussRule& rule) {
  cplx acc{0.0, 0.0};
  const double h = r_max / panels;
  const int q = profile.charge;
  for (int p = 0; p < panels; ++p) {
    const double a = h * p;
    cplx panel{0.0, 0.0};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double rho = a + 0.5 * h * (rule.nodes[j] + 1.0);
      panel += rule.weights[j] * profile.evaluator(rho) *
               (specfun::bessel_j(q, kSqrt2 * rho * r) * rho);
    }
    acc += 0.5 * h * panel;
  }
  return acc;
}

}  // namespace

double default_r_max(const RadialProfile& profile) {
  double alpha = 0.0;
  if (auto it = profile.meta.find("alpha"); it != profile.meta.end()) {
    alpha = std::stod(it->second);
  }
  return alpha + 12.0;
}

std::vector<cplx> lens_transform(const RadialProfile& profile, const states::OpticalConfig& cfg,
                                 const std::vector<double>& r_out, double r_max) {
  (void)cfg;  // evaluation is sigma-scaled; cfg only matters for I/O metadata
  for (double r : r_out) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw invalid_argument_error("lens_transform: output radii must be >= 0");
    }
  }
  r_max = resolve_r_max(profile, r_max);
  const double profile_scale = check_decay(profile, r_max);

  const cplx prefactor = kSqrt2 * unit_imag_pow(-(profile.charge + 1));
  std::vector<cplx> out(r_out.size());
  std::mutex err_mutex;
  std::string err;
  parallel_for(int(r_out.size()), 0, [&](int i) {
    try {
      const double r = r_out[i];
      const int panels = panel_count(r_max, r);
      cplx prev = radial_integral(profile, r, r_max, panels, gauss_legendre(16));
      for (int n = 32; n <= 256; n *= 2) {
        const cplx next = radial_integral(profile, r, r_max, panels, gauss_legendre(n));
        const double scale = std::max(std::abs(next), 1e-4 * profile_scale);
        if (std::abs(next - prev) <= 1e-8 * scale) {
          out[i] = prefactor * next;
          return;
        }
        prev = next;
      }
      throw accuracy_error("lens_transform: radial quadrature did not converge at r=" +
                           std::to_string(r));
    } catch (const std::exception& e) {
      std::lock_guard lock(err_mutex);
      if (err.empty()) err = e.what();
    }
  });
  if (!err.empty()) throw accuracy_error(err);
  return out;
}

std::vector<cplx> lens_transform_2d(const RadialProfile& profile,
                                    const states::OpticalConfig& cfg,
                                    const std::vector<double>& r_out, double r_max) {
  (void)cfg;
  r_max = resolve_r_max(profile, r_max);
  check_decay(profile, r_max);
  const int q = profile.charge;
  const double r_peak = *std::max_element(r_out.begin(), r_out.end());
  const int n_phi = 8 * (int(std::ceil(kSqrt2 * r_max * r_peak)) + q + 16);
  const GaussRule rule = gauss_legendre(32);

  std::vector<cplx> out(r_out.size());
  parallel_for(int(r_out.size()), 0, [&](int i) {
    const double r = r_out[i];
    const int panels = panel_count(r_max, r);
    const double h = r_max / panels;
    cplx acc{0.0, 0.0};
    for (int p = 0; p < panels; ++p) {
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double rho = h * p + 0.5 * h * (rule.nodes[j] + 1.0);
        cplx ang{0.0, 0.0};
        for (int m = 0; m < n_phi; ++m) {
          const double phi = 2.0 * pi * m / n_phi;
          ang += std::exp(kImag * (q * phi - kSqrt2 * rho * r * std::cos(phi)));
        }
        ang *= 2.0 * pi / n_phi;
        acc += 0.5 * h * rule.weights[j] * profile.evaluator(rho) * rho * ang;
      }
    }
    out[i] = kSqrt2 * (-kImag) / (2.0 * pi) * acc;
  });
  return out;
}

double energy_ratio(const RadialProfile& profile_in, const std::vector<cplx>& values_out,
                    const std::vector<double>& r_out, double r_max) {
  if (r_out.size() < 512 || values_out.size() != r_out.size()) {
    throw invalid_argument_error("energy_ratio: need >= 512 matched output samples");
  }
  r_max = resolve_r_max(profile_in, r_max);

  double energy_in = 0.0;
  const int n = 8192;
  const double h = r_max / n;
  for (int i = 0; i <= n; ++i) {
    const double rho = h * i;
    const double term = std::norm(profile_in.evaluator(rho)) * rho;
    energy_in += (i == 0 || i == n) ? 0.5 * term : term;
  }
  energy_in *= h;

  double energy_out = 0.0;
  for (std::size_t i = 0; i + 1 < r_out.size(); ++i) {
    const double f0 = std::norm(values_out[i]) * r_out[i];
    const double f1 = std::norm(values_out[i + 1]) * r_out[i + 1];
    energy_out += 0.5 * (f0 + f1) * (r_out[i + 1] - r_out[i]);
  }
  return energy_out / energy_in;
}

RadialProfile bg_profile(const states::VortexSpec& spec) {
  const double a2 = spec.alpha * spec.alpha;
  const double n = 1.0 / (2.0 * pi * std::sqrt(specfun::bessel_i_scaled(spec.charge, a2)));
  const double amp = 2.0 * std::sqrt(pi) * n;
  const cplx phase = unit_imag_pow(spec.charge);
  const int q = spec.charge;
  const double c = kSqrt2 * spec.alpha;
  RadialProfile profile;
  profile.charge = q;
  profile.evaluator = [=](double rho) {
    return phase * (amp * std::exp(-0.5 * rho * rho) * specfun::bessel_j(q, c * rho));
  };
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", spec.alpha);
  profile.meta["alpha"] = buf;
  profile.meta["charge"] = std::to_string(q);
  profile.meta["family"] = "bg";
  return profile;
}

}  // namespace pqov::lensft
