#include "csv_io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "errors.hpp"

namespace pqov::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

ordered_json axis_json(const states::Axis& axis) {
  return ordered_json{{"label", axis.label},
                      {"min", fmt(axis.min)},
                      {"max", fmt(axis.max)},
                      {"count", axis.count}};
}

void atomic_write(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw io_error("cannot open '" + tmp + "' for writing");
    }
    out << body;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw io_error("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string meta_line(ordered_json meta) {
  meta["tool_version"] = kToolVersion;
  return "# " + meta.dump() + "\n";
}

}  // namespace

void write_field_csv(const states::ComplexField2D& field, const std::string& path) {
  ordered_json meta;
  for (const auto& [k, v] : field.meta) meta[k] = v;
  meta["axis1"] = axis_json(field.axis1);
  meta["axis2"] = axis_json(field.axis2);
  meta["format"] = "axis1,axis2,re,im";

  std::string body = meta_line(meta);
  body += field.axis1.label + "," + field.axis2.label + ",re,im\n";
  for (int i2 = 0; i2 < field.axis2.count; ++i2) {
    const std::string a2 = fmt(field.axis2.value(i2));
    for (int i1 = 0; i1 < field.axis1.count; ++i1) {
      const auto& v = field.at(i1, i2);
      body += fmt(field.axis1.value(i1));
      body += ',';
      body += a2;
      body += ',';
      body += fmt(v.real());
      body += ',';
      body += fmt(v.imag());
      body += '\n';
    }
  }
  atomic_write(path, body);
}

void write_slice_csv(const wigner::WignerSlice& slice, const std::string& path) {
  ordered_json meta;
  for (const auto& [k, v] : slice.meta) meta[k] = v;
  meta["axis1"] = axis_json(slice.axis1);
  meta["axis2"] = axis_json(slice.axis2);
  meta["format"] = "axis1,axis2,value";

  std::string body = meta_line(meta);
  body += slice.axis1.label + "," + slice.axis2.label + ",value\n";
  for (int i2 = 0; i2 < slice.axis2.count; ++i2) {
    const std::string a2 = fmt(slice.axis2.value(i2));
    for (int i1 = 0; i1 < slice.axis1.count; ++i1) {
      body += fmt(slice.axis1.value(i1));
      body += ',';
      body += a2;
      body += ',';
      body += fmt(slice.at(i1, i2));
      body += '\n';
    }
  }
  atomic_write(path, body);
}

void write_curve_csv(const wigner::NegativityCurve& curve, const std::string& path) {
  ordered_json meta;
  for (const auto& [k, v] : curve.meta) meta[k] = v;
  meta["format"] = "q,n_value";

  std::string body = meta_line(meta);
  body += "q,n_value,status\n";
  for (const auto& entry : curve.entries) {
    body += std::to_string(entry.charge);
    body += ',';
    body += entry.ok ? fmt(entry.n_value) : "nan";
    body += ',';
    body += entry.ok ? "ok" : ("error: " + entry.error);
    body += '\n';
  }
  atomic_write(path, body);
}

}  // namespace pqov::io
