#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace supersol {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.kind_ = Kind::Object;
  return v;
}
JsonValue JsonValue::array() {
  JsonValue v;
  v.kind_ = Kind::Array;
  return v;
}
JsonValue JsonValue::str(std::string s) {
  JsonValue v;
  v.kind_ = Kind::String;
  v.string_ = std::move(s);
  return v;
}
JsonValue JsonValue::number(double x) {
  JsonValue v;
  if (std::isinf(x)) return str(x > 0 ? "inf" : "-inf");
  if (std::isnan(x)) return str("nan");
  v.kind_ = Kind::Number;
  v.number_ = x;
  return v;
}
JsonValue JsonValue::integer(long long x) {
  JsonValue v;
  v.kind_ = Kind::Integer;
  v.integer_ = x;
  return v;
}
JsonValue JsonValue::boolean(bool b) {
  JsonValue v;
  v.kind_ = Kind::Bool;
  v.bool_ = b;
  return v;
}

JsonValue& JsonValue::add(const std::string& key, JsonValue v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}
JsonValue& JsonValue::push(JsonValue v) {
  elements_.push_back(std::move(v));
  return *this;
}

namespace {
void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}
}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (kind_) {
    case Kind::Object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += pad;
        escape_into(out, members_[i].first);
        out += ": ";
        members_[i].second.write(out, indent, depth + 1);
        if (i + 1 < members_.size()) out += ',';
        out += '\n';
      }
      out += close_pad + "}";
      return;
    }
    case Kind::Array: {
      if (elements_.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        out += pad;
        elements_[i].write(out, indent, depth + 1);
        if (i + 1 < elements_.size()) out += ',';
        out += '\n';
      }
      out += close_pad + "]";
      return;
    }
    case Kind::String: escape_into(out, string_); return;
    case Kind::Number: out += format_double(number_); return;
    case Kind::Integer: out += std::to_string(integer_); return;
    case Kind::Bool: out += bool_ ? "true" : "false"; return;
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

std::string bound_curve_csv(const BoundCurve& curve) {
  std::string out = "r,bound\n";
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    out += format_double(curve.radii[i]);
    out += ',';
    out += format_double(curve.values[i]);
    out += '\n';
  }
  return out;
}

std::string bound_curve_svg(const BoundCurve& curve) {
  const double W = 640.0, H = 480.0, ml = 70.0, mr = 20.0, mt = 20.0, mb = 50.0;
  double rmin = curve.radii.front(), rmax = curve.radii.back();
  double vmin = kInf, vmax = -kInf;
  for (double v : curve.values) {
    if (!std::isfinite(v)) continue;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!(vmax > vmin)) {
    vmin = std::isfinite(vmin) ? vmin - 1.0 : 0.0;
    vmax = vmin + 2.0;
  }
  if (!(rmax > rmin)) rmax = rmin + 1.0;
  auto X = [&](double r) { return ml + (r - rmin) / (rmax - rmin) * (W - ml - mr); };
  auto Y = [&](double v) { return H - mb - (v - vmin) / (vmax - vmin) * (H - mt - mb); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                ml, H - mb, W - mr, H - mb);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"black\"/>\n",
                ml, mt, ml, H - mb);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.6g</text>\n",
                ml - 4.0, H - mb + 16.0, rmin);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.6g</text>\n",
                W - mr - 30.0, H - mb + 16.0, rmax);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.6g</text>\n", 8.0,
                H - mb, vmin);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%.6g</text>\n", 8.0,
                mt + 12.0, vmax);
  svg += buf;
  std::snprintf(buf, sizeof buf, "  <text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">r</text>\n",
                0.5 * (ml + W - mr), H - 12.0);
  svg += buf;
  svg += "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < curve.radii.size(); ++i) {
    if (!std::isfinite(curve.values[i])) continue;
    std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", first ? "" : " ",
                  X(curve.radii[i]), Y(curve.values[i]));
    svg += buf;
    first = false;
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

}  // namespace supersol
