#include "pqov.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "csv_io.hpp"
#include "errors.hpp"
#include "lensft.hpp"
#include "selftest.hpp"
#include "states.hpp"
#include "wigner.hpp"

struct pqov_field {
  std::variant<pqov::states::ComplexField2D, pqov::wigner::WignerSlice> data;
};

struct pqov_curve {
  pqov::wigner::NegativityCurve data;
};

namespace {

thread_local std::string g_last_error;

pqov_status fail(pqov_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
pqov_status guarded(Fn&& fn) {
  try {
    fn();
    return PQOV_OK;
  } catch (const pqov::invalid_argument_error& e) {
    return fail(PQOV_ERR_USAGE, e.what());
  } catch (const pqov::unsupported_range_error& e) {
    return fail(PQOV_ERR_USAGE, e.what());
  } catch (const pqov::io_error& e) {
    return fail(PQOV_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(PQOV_ERR_NUMERIC, e.what());
  }
}

struct Translated {
  pqov::states::OpticalConfig cfg;
  pqov::states::VortexSpec spec;
  int threads = 0;
};

Translated translate(const pqov_params* params) {
  if (params == nullptr) {
    throw pqov::invalid_argument_error("params must not be null");
  }
  Translated t;
  t.cfg.wavelength = params->wavelength_nm * 1e-9;
  t.cfg.focal_length = params->focal_length_cm * 1e-2;
  t.spec.alpha = params->alpha;
  t.spec.charge = params->charge;
  t.threads = params->threads;
  return t;
}

pqov::states::StateFamily parse_state(const char* state) {
  if (state != nullptr) {
    if (std::strcmp(state, "bg") == 0) return pqov::states::StateFamily::bg;
    if (std::strcmp(state, "perfect") == 0) return pqov::states::StateFamily::perfect;
  }
  throw pqov::invalid_argument_error("state must be 'bg' or 'perfect'");
}

pqov::wigner::Method parse_method(const char* method) {
  if (method != nullptr) {
    if (std::strcmp(method, "definition") == 0) return pqov::wigner::Method::definition;
    if (std::strcmp(method, "analytic") == 0) return pqov::wigner::Method::analytic;
  }
  throw pqov::invalid_argument_error("method must be 'definition' or 'analytic'");
}

pqov::states::Axis make_axis(const char* label, int grid, double extent) {
  if (grid < 2) {
    throw pqov::invalid_argument_error("grid must be >= 2");
  }
  if (!(extent > 0.0)) {
    throw pqov::invalid_argument_error("extent must be positive");
  }
  return {label, -extent, extent, grid};
}

void require_out(const void* out) {
  if (out == nullptr) {
    throw pqov::invalid_argument_error("output pointer must not be null");
  }
}

}  // namespace

extern "C" {

void pqov_params_init(pqov_params* params) {
  if (params == nullptr) return;
  params->wavelength_nm = 810.0;
  params->focal_length_cm = 70.0;
  params->alpha = 15.0;
  params->charge = 0;
  params->threads = 0;
}

const char* pqov_version(void) { return pqov::io::kToolVersion; }

const char* pqov_last_error(void) { return g_last_error.c_str(); }

pqov_status pqov_quad_grid(const pqov_params* params, const char* state, int grid,
                           double extent, pqov_field** out) {
  return guarded([&] {
    require_out(out);
    const Translated t = translate(params);
    const auto family = parse_state(state);
    const auto axis_x = make_axis("x", grid, extent);
    const auto axis_y = make_axis("y", grid, extent);
    auto field = pqov::states::amplitude_grid(family, t.cfg, t.spec, axis_x, axis_y, t.threads);
    *out = new pqov_field{std::move(field)};
  });
}

pqov_status pqov_phase_jumps(const pqov_params* params, const char* state, int grid,
                             double extent, double circle_radius, int* jumps_out) {
  return guarded([&] {
    require_out(jumps_out);
    const Translated t = translate(params);
    const auto family = parse_state(state);
    const auto axis_x = make_axis("x", grid, extent);
    const auto axis_y = make_axis("y", grid, extent);
    const auto field =
        pqov::states::amplitude_grid(family, t.cfg, t.spec, axis_x, axis_y, t.threads);
    *jumps_out = pqov::states::count_phase_jumps(field, circle_radius);
  });
}

pqov_status pqov_ring_radius(const pqov_params* params, double* radius_out) {
  return guarded([&] {
    require_out(radius_out);
    const Translated t = translate(params);
    const auto scales = pqov::states::derive_scales(t.cfg, t.spec);
    *radius_out = pqov::states::ring_radius(scales, t.spec);
  });
}

pqov_status pqov_wigner_slice(const pqov_params* params, const char* plane, double fixed1,
                              double fixed2, int grid, double extent, const char* method,
                              int quad_nodes, double quad_half_width, pqov_field** out) {
  return guarded([&] {
    require_out(out);
    const Translated t = translate(params);
    if (plane == nullptr) {
      throw pqov::invalid_argument_error("plane must not be null");
    }
    const auto plane_id = pqov::wigner::parse_plane(plane);
    const auto method_id = parse_method(method);
    const auto axis1 = make_axis("a1", grid, extent);
    const auto axis2 = make_axis("a2", grid, extent);
    const pqov::wigner::QuadSpec quad{quad_nodes, quad_half_width};
    auto slice = pqov::wigner::wigner_slice(t.cfg, t.spec, plane_id, fixed1, fixed2, axis1,
                                            axis2, method_id, quad, t.threads);
    *out = new pqov_field{std::move(slice)};
  });
}

pqov_status pqov_negativity_scan(const pqov_params* params, int q_min, int q_max,
                                 const char* method, int grid, double extent,
                                 pqov_curve** out) {
  return guarded([&] {
    require_out(out);
    const Translated t = translate(params);
    const auto method_id = parse_method(method);
    make_axis("x", grid, extent);  // validates grid/extent
    auto curve = pqov::wigner::negativity_scan(t.cfg, t.spec.alpha, q_min, q_max, method_id,
                                               grid, extent, {}, t.threads);
    *out = new pqov_curve{std::move(curve)};
  });
}

pqov_status pqov_selftest(int threads, double bessel_perturbation, char** report_out,
                          int* all_passed) {
  return guarded([&] {
    require_out(report_out);
    require_out(all_passed);
    pqov::selftest::Options options;
    options.threads = threads;
    options.bessel_perturbation = bessel_perturbation;
    const auto report = pqov::selftest::run(options);
    char* text = static_cast<char*>(std::malloc(report.text.size() + 1));
    if (text == nullptr) {
      throw pqov::io_error("out of memory for selftest report");
    }
    std::memcpy(text, report.text.c_str(), report.text.size() + 1);
    *report_out = text;
    *all_passed = report.all_passed ? 1 : 0;
  });
}

pqov_status pqov_field_write_csv(const pqov_field* field, const char* path) {
  return guarded([&] {
    if (field == nullptr || path == nullptr) {
      throw pqov::invalid_argument_error("field and path must not be null");
    }
    if (const auto* grid = std::get_if<pqov::states::ComplexField2D>(&field->data)) {
      pqov::io::write_field_csv(*grid, path);
    } else {
      pqov::io::write_slice_csv(std::get<pqov::wigner::WignerSlice>(field->data), path);
    }
  });
}

pqov_status pqov_curve_write_csv(const pqov_curve* curve, const char* path) {
  return guarded([&] {
    if (curve == nullptr || path == nullptr) {
      throw pqov::invalid_argument_error("curve and path must not be null");
    }
    pqov::io::write_curve_csv(curve->data, path);
  });
}

int pqov_field_rows(const pqov_field* field) {
  if (field == nullptr) return 0;
  if (const auto* grid = std::get_if<pqov::states::ComplexField2D>(&field->data)) {
    return grid->axis1.count;
  }
  return std::get<pqov::wigner::WignerSlice>(field->data).axis1.count;
}

int pqov_field_cols(const pqov_field* field) {
  if (field == nullptr) return 0;
  if (const auto* grid = std::get_if<pqov::states::ComplexField2D>(&field->data)) {
    return grid->axis2.count;
  }
  return std::get<pqov::wigner::WignerSlice>(field->data).axis2.count;
}

pqov_status pqov_field_value(const pqov_field* field, int i1, int i2, double* re_out,
                             double* im_out) {
  return guarded([&] {
    require_out(re_out);
    require_out(im_out);
    if (field == nullptr || i1 < 0 || i2 < 0 || i1 >= pqov_field_rows(field) ||
        i2 >= pqov_field_cols(field)) {
      throw pqov::invalid_argument_error("field index out of range");
    }
    if (const auto* grid = std::get_if<pqov::states::ComplexField2D>(&field->data)) {
      *re_out = grid->at(i1, i2).real();
      *im_out = grid->at(i1, i2).imag();
    } else {
      *re_out = std::get<pqov::wigner::WignerSlice>(field->data).at(i1, i2);
      *im_out = 0.0;
    }
  });
}

int pqov_curve_size(const pqov_curve* curve) {
  return curve == nullptr ? 0 : int(curve->data.entries.size());
}

pqov_status pqov_curve_entry(const pqov_curve* curve, int index, int* charge_out,
                             double* n_value_out, int* ok_out) {
  return guarded([&] {
    require_out(charge_out);
    require_out(n_value_out);
    require_out(ok_out);
    if (curve == nullptr || index < 0 || index >= pqov_curve_size(curve)) {
      throw pqov::invalid_argument_error("curve index out of range");
    }
    const auto& entry = curve->data.entries[index];
    *charge_out = entry.charge;
    *n_value_out = entry.n_value;
    *ok_out = entry.ok ? 1 : 0;
  });
}

void pqov_field_free(pqov_field* field) { delete field; }

void pqov_curve_free(pqov_curve* curve) { delete curve; }

void pqov_string_free(char* text) { std::free(text); }

}  // extern "C"
