#pragma once

#include <string>

#include "states.hpp"
#include "wigner.hpp"

namespace pqov::io {

inline constexpr const char* kToolVersion = "1.0.0";

// All writers emit '#'-prefixed single-line JSON metadata, then a header row,
// then data rows (axis2-major, axis1 inner). Numbers use %.16e so output is
// byte-identical across runs. Files are written to a temp path and renamed.
void write_field_csv(const states::ComplexField2D& field, const std::string& path);
void write_slice_csv(const wigner::WignerSlice& slice, const std::string& path);
void write_curve_csv(const wigner::NegativityCurve& curve, const std::string& path);

}  // namespace pqov::io
