#include "wigner.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "errors.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace pqov::wigner {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;
constexpr cplx kImag{0.0, 1.0};
constexpr double kFourPiSq = 4.0 * pi * pi;

double log_gamma(double x) {
  int sign = 1;
  return ::lgamma_r(x, &sign);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

// Gauss-Legendre rule mapped to [-half_width, half_width].
struct ScaledRule {
  std::vector<double> u, w;
};

ScaledRule scaled_rule(const QuadSpec& quad) {
  const GaussRule base = gauss_legendre(quad.nodes);
  ScaledRule rule;
  rule.u.resize(quad.nodes);
  rule.w.resize(quad.nodes);
  for (int j = 0; j < quad.nodes; ++j) {
    rule.u[j] = quad.half_width * base.nodes[j];
    rule.w[j] = quad.half_width * base.weights[j];
  }
  return rule;
}

// Weighted kernel matrix C[j*n+k] = w_j w_k psi(x+u_j/2, y+u_k/2)
// conj(psi(x-u_j/2, y-u_k/2)); every Wigner quantity at fixed (x, y) is a
// phase-weighted sum over C.
void build_kernel(const TwoModeState& psi, double x, double y, const ScaledRule& rule,
                  std::vector<cplx>& c) {
  const int n = int(rule.u.size());
  c.resize(std::size_t(n) * n);
  for (int j = 0; j < n; ++j) {
    const double xp = x + 0.5 * rule.u[j];
    const double xm = x - 0.5 * rule.u[j];
    for (int k = 0; k < n; ++k) {
      const cplx a = psi.amplitude(xp, y + 0.5 * rule.u[k]);
      const cplx b = psi.amplitude(xm, y - 0.5 * rule.u[k]);
      c[std::size_t(j) * n + k] = (rule.w[j] * rule.w[k]) * a * std::conj(b);
    }
  }
}

std::vector<cplx> phase_vector(const ScaledRule& rule, double p) {
  std::vector<cplx> ph(rule.u.size());
  for (std::size_t j = 0; j < ph.size(); ++j) {
    ph[j] = std::exp(kImag * (rule.u[j] * p));
  }
  return ph;
}

cplx kernel_sum(const std::vector<cplx>& c, const std::vector<cplx>& phase_u,
                const std::vector<cplx>& phase_v) {
  const int n = int(phase_u.size());
  cplx total{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    cplx row{0.0, 0.0};
    const cplx* cj = &c[std::size_t(j) * n];
    for (int k = 0; k < n; ++k) row += cj[k] * phase_v[k];
    total += phase_u[j] * row;
  }
  return total;
}

struct PlaneLayout {
  const char* axis1;
  const char* axis2;
  const char* fixed1;
  const char* fixed2;
};

PlaneLayout layout(Plane plane) {
  switch (plane) {
    case Plane::xy: return {"x", "y", "px", "py"};
    case Plane::x_px: return {"x", "px", "y", "py"};
    case Plane::x_py: return {"x", "py", "y", "px"};
    case Plane::y_py: return {"y", "py", "x", "px"};
    case Plane::y_px: return {"y", "px", "x", "py"};
    default: return {"px", "py", "x", "y"};
  }
}

PhaseSpacePoint assemble_point(Plane plane, double a1, double a2, double f1, double f2) {
  switch (plane) {
    case Plane::xy: return {a1, a2, f1, f2};
    case Plane::x_px: return {a1, f1, a2, f2};
    case Plane::x_py: return {a1, f1, f2, a2};
    case Plane::y_py: return {f1, a1, f2, a2};
    case Plane::y_px: return {f1, a1, a2, f2};
    default: return {f1, f2, a1, a2};
  }
}

double axis_abs_max(const states::Axis& axis) {
  return std::max(std::abs(axis.min), std::abs(axis.max));
}

double momentum_extent(Plane plane, const states::Axis& axis1, const states::Axis& axis2,
                       double fixed1, double fixed2) {
  switch (plane) {
    case Plane::xy: return std::max(std::abs(fixed1), std::abs(fixed2));
    case Plane::x_px:
    case Plane::x_py:
    case Plane::y_py:
    case Plane::y_px: return std::max(axis_abs_max(axis2), std::abs(fixed2));
    default: return std::max(axis_abs_max(axis1), axis_abs_max(axis2));
  }
}

// 4-point Lagrange interpolation on a uniform table.
double cubic_interp(const std::vector<double>& table, double step, double r) {
  const int n = int(table.size());
  const double f = r / step;
  int i = int(f);
  i = std::clamp(i, 1, n - 3);
  const double t = f - i;
  const double y0 = table[i - 1], y1 = table[i], y2 = table[i + 1], y3 = table[i + 2];
  const double a = -t * (t - 1.0) * (t - 2.0) / 6.0;
  const double b = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
  const double c = -(t + 1.0) * t * (t - 2.0) / 2.0;
  const double d = (t + 1.0) * t * (t - 1.0) / 6.0;
  return a * y0 + b * y1 + c * y2 + d * y3;
}

void run_rows(int rows, int threads, const std::function<void(int)>& body) {
  std::mutex err_mutex;
  std::string err;
  parallel_for(rows, threads, [&](int i) {
    try {
      body(i);
    } catch (const std::exception& e) {
      std::lock_guard lock(err_mutex);
      if (err.empty()) err = "wigner_slice: index " + std::to_string(i) + ": " + e.what();
    }
  });
  if (!err.empty()) throw accuracy_error(err);
}

}  // namespace

Plane parse_plane(const std::string& name) {
  if (name == "xy") return Plane::xy;
  if (name == "x_px") return Plane::x_px;
  if (name == "x_py") return Plane::x_py;
  if (name == "y_py") return Plane::y_py;
  if (name == "y_px") return Plane::y_px;
  if (name == "px_py") return Plane::px_py;
  throw invalid_argument_error("unknown plane '" + name +
                               "' (expected xy|x_px|x_py|y_py|y_px|px_py)");
}

std::string plane_name(Plane plane) {
  if (plane == Plane::xy) return "xy";
  const PlaneLayout l = layout(plane);
  return std::string(l.axis1) + "_" + l.axis2;
}

QuadSpec resolve_quad(const states::VortexSpec& spec, double p_extent,
                      const QuadSpec& requested) {
  QuadSpec quad = requested;
  if (quad.half_width <= 0.0) quad.half_width = 2.0 * (spec.alpha + 6.0);
  if (quad.nodes <= 0) {
    quad.nodes = std::max(200, int(std::ceil(0.45 * quad.half_width * (p_extent + 6.0))));
  }
  return quad;
}

double SignedLog::to_double() const {
  if (sign == 0.0) return 0.0;
  if (log_abs > 709.0) return sign * HUGE_VAL;
  if (log_abs < -745.0) return 0.0;
  return sign * std::exp(log_abs);
}

TwoModeState::TwoModeState(const states::OpticalConfig& cfg, const states::VortexSpec& spec,
                           double r_max) {
  const states::DerivedScales scales = states::derive_scales(cfg, spec);
  (void)scales;
  charge_ = spec.charge;
  alpha_ = spec.alpha;
  r_max_ = std::min(std::max(r_max, alpha_ + 8.0), alpha_ + 27.0);
  step_ = 1.5e-4;
  const int n = int(std::ceil(r_max_ / step_)) + 4;
  table_.resize(n);
  const double a2 = alpha_ * alpha_;
  const double kmod = std::sqrt(2.0 / pi) / std::sqrt(specfun::bessel_i_scaled(charge_, a2));
  for (int i = 0; i < n; ++i) {
    const double r = step_ * i;
    const double d = r - alpha_;
    table_[i] = kmod * std::exp(-d * d) * specfun::bessel_i_scaled(charge_, 2.0 * alpha_ * r);
  }
  double norm_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = step_ * i;
    const double term = table_[i] * table_[i] * r;
    norm_sq += (i == 0 || i == n - 1) ? 0.5 * term : term;
  }
  norm_sq *= 2.0 * pi * step_;
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& v : table_) v *= inv;
}

double TwoModeState::radial(double r) const {
  if (r >= r_max_ || r < 0.0) return 0.0;
  const double f = r / step_;
  const int i = int(f);
  const double t = f - i;
  return table_[i] * (1.0 - t) + table_[i + 1] * t;
}

cplx TwoModeState::amplitude(double x, double y) const {
  const double r = std::hypot(x, y);
  const double mod = radial(r);
  if (mod == 0.0) return {0.0, 0.0};
  if (charge_ == 0) return {mod, 0.0};
  const double phase = charge_ * std::atan2(y, x);
  return {mod * std::cos(phase), mod * std::sin(phase)};
}

SignedLog wigner_analytic_log(const states::DerivedScales& scales,
                              const states::VortexSpec& spec, const PhaseSpacePoint& p) {
  if (spec.charge > 50) {
    throw unsupported_range_error("wigner_analytic: q > 50 is outside the validated range");
  }
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.px) ||
      !std::isfinite(p.py)) {
    throw invalid_argument_error("wigner_analytic: non-finite phase-space point");
  }
  const int q = spec.charge;
  const double sigma = scales.sigma;
  const double r_sq = p.x * p.x + p.y * p.y;
  const double p_sq = p.px * p.px + p.py * p.py;

  // I_q argument as printed: B|r|^2 with B = 2 r_c / sigma^2 and |r| physical.
  const double arg_i = scales.coeff_b * r_sq * sigma * sigma;
  double log_i = 0.0;
  if (arg_i == 0.0) {
    if (q > 0) return {0.0, 0.0};
  } else {
    const double iv = specfun::bessel_i_scaled(q, arg_i);
    log_i = iv > 0.0 ? std::log(iv) + arg_i : q * std::log(0.5 * arg_i) - log_gamma(q + 1.0);
  }

  double factorial_sum = 0.0;  // sum_{k=0}^q k!, as printed
  double kfact = 1.0;
  for (int k = 0; k <= q; ++k) {
    if (k > 1) kfact *= k;
    factorial_sum += kfact;
  }

  const double laguerre_arg =
      2.0 * r_sq + 0.5 * p_sq + 2.0 * (p.px * p.y - p.py * p.x);
  const double lag = specfun::laguerre(q, laguerre_arg);
  if (lag == 0.0) return {0.0, 0.0};

  SignedLog out;
  out.sign = (q % 2 == 0 ? 1.0 : -1.0) * (lag > 0.0 ? 1.0 : -1.0);
  out.log_abs = 2.0 * scales.coeff_a_log - std::log(kFourPiSq) - 2.0 * r_sq - 0.5 * p_sq +
                std::log(factorial_sum) + (1.0 - q) * std::log(2.0) + std::log(pi) +
                (2.0 * q + 2.0) * std::log(sigma) + log_i + std::log(std::abs(lag));
  return out;
}

double wigner_analytic(const states::DerivedScales& scales, const states::VortexSpec& spec,
                       const PhaseSpacePoint& p) {
  return wigner_analytic_log(scales, spec, p).to_double();
}

DefResult wigner_definition(const TwoModeState& psi, const PhaseSpacePoint& p,
                            const QuadSpec& quad) {
  const QuadSpec resolved =
      resolve_quad({psi.alpha(), psi.charge()}, std::max(std::abs(p.px), std::abs(p.py)), quad);
  const ScaledRule rule = scaled_rule(resolved);
  std::vector<cplx> c;
  build_kernel(psi, p.x, p.y, rule, c);
  const cplx total =
      kernel_sum(c, phase_vector(rule, p.px), phase_vector(rule, p.py)) / kFourPiSq;
  return {total.real(), std::abs(total.imag())};
}

double wigner_definition_checked(const TwoModeState& psi, const PhaseSpacePoint& p,
                                 const QuadSpec& quad) {
  const QuadSpec base =
      resolve_quad({psi.alpha(), psi.charge()}, std::max(std::abs(p.px), std::abs(p.py)), quad);
  const DefResult coarse = wigner_definition(psi, p, base);
  QuadSpec fine = base;
  fine.nodes *= 2;
  const DefResult refined = wigner_definition(psi, p, fine);
  const double scale = std::max({std::abs(refined.value), std::abs(coarse.value), 1e-12});
  if (std::abs(refined.value - coarse.value) > 1e-6 * scale) {
    throw accuracy_error("wigner_definition: node doubling changed the value by more than "
                         "1e-6 relative");
  }
  return refined.value;
}

double marginal_pxpy(const TwoModeState& psi, double x, double y, double p_box,
                     const QuadSpec& quad) {
  const QuadSpec resolved = resolve_quad({psi.alpha(), psi.charge()}, p_box, quad);
  const ScaledRule rule = scaled_rule(resolved);
  std::vector<cplx> c;
  build_kernel(psi, x, y, rule, c);
  const int n = resolved.nodes;
  std::vector<double> box(n);  // int_{-P}^{P} e^{i u p} dp = 2 sin(uP)/u
  for (int j = 0; j < n; ++j) {
    const double u = rule.u[j];
    box[j] = std::abs(u) < 1e-12 ? 2.0 * p_box : 2.0 * std::sin(u * p_box) / u;
  }
  cplx total{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    cplx row{0.0, 0.0};
    const cplx* cj = &c[std::size_t(j) * n];
    for (int k = 0; k < n; ++k) row += cj[k] * box[k];
    total += box[j] * row;
  }
  return total.real() / kFourPiSq;
}

WignerSlice wigner_slice(const states::OpticalConfig& cfg, const states::VortexSpec& spec,
                         Plane plane, double fixed1, double fixed2, const states::Axis& axis1,
                         const states::Axis& axis2, Method method, const QuadSpec& quad,
                         int threads) {
  if (axis1.count < 2 || axis2.count < 2) {
    throw invalid_argument_error("wigner_slice: axis counts must be >= 2");
  }
  const states::DerivedScales scales = states::derive_scales(cfg, spec);
  const PlaneLayout names = layout(plane);

  WignerSlice slice;
  slice.plane = plane;
  slice.method = method;
  slice.axis1 = axis1;
  slice.axis2 = axis2;
  slice.axis1.label = names.axis1;
  slice.axis2.label = names.axis2;
  slice.fixed1 = fixed1;
  slice.fixed2 = fixed2;
  slice.values.assign(std::size_t(axis1.count) * axis2.count, 0.0);
  slice.meta["plane"] = plane_name(plane);
  slice.meta["method"] = method == Method::analytic ? "analytic" : "definition";
  slice.meta["charge"] = std::to_string(spec.charge);
  slice.meta["alpha"] = fmt(spec.alpha);
  slice.meta[std::string("fixed_") + names.fixed1] = fmt(fixed1);
  slice.meta[std::string("fixed_") + names.fixed2] = fmt(fixed2);
  slice.meta["momentum_sign"] = "e^{+iR.p}";

  if (method == Method::analytic) {
    std::vector<SignedLog> logs(slice.values.size());
    run_rows(axis2.count, threads, [&](int i2) {
      for (int i1 = 0; i1 < axis1.count; ++i1) {
        const PhaseSpacePoint p =
            assemble_point(plane, axis1.value(i1), axis2.value(i2), fixed1, fixed2);
        logs[std::size_t(i2) * axis1.count + i1] = wigner_analytic_log(scales, spec, p);
      }
    });
    double log_scale = -HUGE_VAL;
    for (const SignedLog& v : logs) {
      if (v.sign != 0.0) log_scale = std::max(log_scale, v.log_abs);
    }
    if (log_scale == -HUGE_VAL) log_scale = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
      slice.values[i] = logs[i].sign == 0.0
                            ? 0.0
                            : logs[i].sign * std::exp(logs[i].log_abs - log_scale);
    }
    slice.meta["log_scale"] = fmt(log_scale);
    return slice;
  }

  const double p_extent = momentum_extent(plane, axis1, axis2, fixed1, fixed2);
  const QuadSpec resolved = resolve_quad(spec, p_extent, quad);
  slice.meta["quad_nodes"] = std::to_string(resolved.nodes);
  slice.meta["quad_half_width"] = fmt(resolved.half_width);
  const ScaledRule rule = scaled_rule(resolved);
  const int n = resolved.nodes;

  // Largest radius psi is sampled at: grid corner plus half the R window.
  const double pos_extent =
      plane == Plane::px_py
          ? std::hypot(fixed1, fixed2)
          : (plane == Plane::xy ? std::hypot(axis_abs_max(axis1), axis_abs_max(axis2))
                                : std::hypot(axis_abs_max(axis1), std::abs(fixed1)));
  const TwoModeState psi(cfg, spec, pos_extent + resolved.half_width);

  std::vector<double> imag_by_row;  // one slot per parallel index: no races
  auto record = [&](int row, double imag) {
    imag_by_row[row] = std::max(imag_by_row[row], imag / kFourPiSq);
  };

  if (plane == Plane::xy && fixed1 == 0.0 && fixed2 == 0.0) {
    // W(x, y, 0, 0) depends only on |r|: evaluate a dense radial profile and
    // interpolate the grid from it.
    const double r_top = std::hypot(axis_abs_max(axis1), axis_abs_max(axis2));
    const double r_step = std::min(1.0 / 256.0, pi / (4.0 * 2.0 * spec.alpha) / 8.0);
    const int n_rad = int(std::ceil(r_top / r_step)) + 4;
    std::vector<double> profile(n_rad);
    imag_by_row.assign(n_rad, 0.0);
    run_rows(n_rad, threads, [&](int i) {
      std::vector<cplx> c;
      build_kernel(psi, r_step * i, 0.0, rule, c);
      cplx total{0.0, 0.0};
      for (const cplx& v : c) total += v;
      profile[i] = total.real() / kFourPiSq;
      record(i, std::abs(total.imag()));
    });
    run_rows(axis2.count, threads, [&](int i2) {
      const double y = axis2.value(i2);
      for (int i1 = 0; i1 < axis1.count; ++i1) {
        slice.at(i1, i2) = cubic_interp(profile, r_step, std::hypot(axis1.value(i1), y));
      }
    });
    slice.meta["radial_reduction"] = "true";
  } else if (plane == Plane::px_py) {
    std::vector<cplx> c;
    build_kernel(psi, fixed1, fixed2, rule, c);
    std::vector<cplx> pv(std::size_t(axis2.count) * n);  // e^{i u_k py(i2)}
    for (int i2 = 0; i2 < axis2.count; ++i2) {
      const std::vector<cplx> ph = phase_vector(rule, axis2.value(i2));
      std::copy(ph.begin(), ph.end(), pv.begin() + std::size_t(i2) * n);
    }
    std::vector<cplx> m(std::size_t(n) * axis2.count);  // row-collapsed kernel
    run_rows(n, threads, [&](int j) {
      const cplx* cj = &c[std::size_t(j) * n];
      for (int i2 = 0; i2 < axis2.count; ++i2) {
        const cplx* ph = &pv[std::size_t(i2) * n];
        cplx acc{0.0, 0.0};
        for (int k = 0; k < n; ++k) acc += cj[k] * ph[k];
        m[std::size_t(j) * axis2.count + i2] = acc;
      }
    });
    imag_by_row.assign(axis1.count, 0.0);
    run_rows(axis1.count, threads, [&](int i1) {
      const std::vector<cplx> pu = phase_vector(rule, axis1.value(i1));
      for (int i2 = 0; i2 < axis2.count; ++i2) {
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += pu[j] * m[std::size_t(j) * axis2.count + i2];
        acc /= kFourPiSq;
        slice.at(i1, i2) = acc.real();
        record(i1, std::abs(acc.imag()) * kFourPiSq);
      }
    });
  } else if (plane == Plane::xy) {
    // Nonzero fixed momenta: no rotational shortcut; direct per-point sums.
    const std::vector<cplx> pu = phase_vector(rule, fixed1);
    const std::vector<cplx> pv = phase_vector(rule, fixed2);
    imag_by_row.assign(axis2.count, 0.0);
    run_rows(axis2.count, threads, [&](int i2) {
      std::vector<cplx> c;
      for (int i1 = 0; i1 < axis1.count; ++i1) {
        build_kernel(psi, axis1.value(i1), axis2.value(i2), rule, c);
        const cplx total = kernel_sum(c, pu, pv) / kFourPiSq;
        slice.at(i1, i2) = total.real();
        record(i2, std::abs(total.imag()) * kFourPiSq);
      }
    });
  } else {
    // One position axis, one momentum axis: collapse the kernel against the
    // fixed momentum once per position, then sweep the momentum axis.
    const bool momentum_is_px = plane == Plane::x_px || plane == Plane::y_px;
    std::vector<cplx> pm(std::size_t(axis2.count) * n);
    for (int i2 = 0; i2 < axis2.count; ++i2) {
      const std::vector<cplx> ph = phase_vector(rule, axis2.value(i2));
      std::copy(ph.begin(), ph.end(), pm.begin() + std::size_t(i2) * n);
    }
    const std::vector<cplx> fixed_phase = phase_vector(rule, fixed2);
    imag_by_row.assign(axis1.count, 0.0);
    run_rows(axis1.count, threads, [&](int i1) {
      const double a1 = axis1.value(i1);
      const bool axis_is_x = plane == Plane::x_px || plane == Plane::x_py;
      const double x = axis_is_x ? a1 : fixed1;
      const double y = axis_is_x ? fixed1 : a1;
      std::vector<cplx> c;
      build_kernel(psi, x, y, rule, c);
      std::vector<cplx> collapsed(n, cplx{0.0, 0.0});
      if (momentum_is_px) {
        // fixed2 = py: collapse over k, sweep e^{i u_j px}
        for (int j = 0; j < n; ++j) {
          const cplx* cj = &c[std::size_t(j) * n];
          cplx acc{0.0, 0.0};
          for (int k = 0; k < n; ++k) acc += cj[k] * fixed_phase[k];
          collapsed[j] = acc;
        }
      } else {
        // fixed2 = px: collapse over j, sweep e^{i u_k py}
        for (int j = 0; j < n; ++j) {
          const cplx* cj = &c[std::size_t(j) * n];
          for (int k = 0; k < n; ++k) collapsed[k] += fixed_phase[j] * cj[k];
        }
      }
      for (int i2 = 0; i2 < axis2.count; ++i2) {
        const cplx* ph = &pm[std::size_t(i2) * n];
        cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j) acc += collapsed[j] * ph[j];
        acc /= kFourPiSq;
        slice.at(i1, i2) = acc.real();
        record(i1, std::abs(acc.imag()) * kFourPiSq);
      }
    });
  }

  double max_imag = 0.0;
  for (double v : imag_by_row) max_imag = std::max(max_imag, v);
  double max_abs = 0.0;
  for (double v : slice.values) max_abs = std::max(max_abs, std::abs(v));
  slice.meta["max_imag_residual"] = fmt(max_imag);
  if (max_abs > 0.0 && max_imag > 1e-8 * max_abs) {
    throw accuracy_error("wigner_slice: imaginary residual " + fmt(max_imag) +
                         " exceeds 1e-8 of the slice maximum");
  }
  return slice;
}

double negativity_volume(const WignerSlice& slice) {
  const int n1 = slice.axis1.count;
  const int n2 = slice.axis2.count;
  if (n1 < 2 || n2 < 2) {
    throw invalid_argument_error("negativity_volume: degenerate slice");
  }
  double max_abs = 0.0;
  for (double v : slice.values) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) {
    throw invalid_argument_error("negativity_volume: slice is identically zero");
  }
  double border = 0.0;
  for (int i1 = 0; i1 < n1; ++i1) {
    border = std::max({border, std::abs(slice.at(i1, 0)), std::abs(slice.at(i1, n2 - 1))});
  }
  for (int i2 = 0; i2 < n2; ++i2) {
    border = std::max({border, std::abs(slice.at(0, i2)), std::abs(slice.at(n1 - 1, i2))});
  }
  if (border > 1e-10 * max_abs) {
    throw truncation_error("negativity_volume: |W| on the slice border is above 1e-10 of "
                           "the slice maximum; enlarge the domain");
  }
  const double h1 = (slice.axis1.max - slice.axis1.min) / (n1 - 1);
  const double h2 = (slice.axis2.max - slice.axis2.min) / (n2 - 1);
  double integral = 0.0;
  for (int i2 = 0; i2 < n2; ++i2) {
    const double w2 = (i2 == 0 || i2 == n2 - 1) ? 0.5 : 1.0;
    for (int i1 = 0; i1 < n1; ++i1) {
      const double w1 = (i1 == 0 || i1 == n1 - 1) ? 0.5 : 1.0;
      integral += w1 * w2 * std::abs(slice.at(i1, i2));
    }
  }
  integral *= h1 * h2;
  return 0.5 * integral - 1.0;
}

NegativityCurve negativity_scan(const states::OpticalConfig& cfg, double alpha, int q_min,
                                int q_max, Method method, int grid_count, double extent,
                                const QuadSpec& quad, int threads) {
  if (q_min < 0 || q_min > q_max || q_max > 20) {
    throw invalid_argument_error("negativity_scan: need 0 <= q_min <= q_max <= 20");
  }
  if (grid_count < 2 || !(extent > 0.0)) {
    throw invalid_argument_error("negativity_scan: invalid grid spec");
  }
  NegativityCurve curve;
  curve.meta["alpha"] = fmt(alpha);
  curve.meta["method"] = method == Method::analytic ? "analytic" : "definition";
  curve.meta["plane"] = "x_py";
  curve.meta["fixed_y"] = "0";
  curve.meta["fixed_px"] = "0";
  curve.meta["grid"] = std::to_string(grid_count);
  curve.meta["extent"] = fmt(extent);
  if (method == Method::analytic) {
    curve.meta["scale_note"] = "slice values carry a per-q log_scale factor";
  }
  const states::Axis ax{"x", -extent, extent, grid_count};
  const states::Axis ap{"py", -extent, extent, grid_count};
  for (int q = q_min; q <= q_max; ++q) {
    NegativityEntry entry;
    entry.charge = q;
    try {
      const WignerSlice slice = wigner_slice(cfg, {alpha, q}, Plane::x_py, 0.0, 0.0, ax, ap,
                                             method, quad, threads);
      entry.n_value = negativity_volume(slice);
      entry.ok = true;
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    curve.entries.push_back(entry);
  }
  return curve;
}

}  // namespace pqov::wigner
