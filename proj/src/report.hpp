#pragma once

// Deterministic report emission: an insertion-ordered JSON value with
// numbers printed at 17 significant digits, plus the CSV and SVG writers
// for bound curves. Identical inputs produce byte-identical output.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"

namespace supersol {

class JsonValue {
 public:
  static JsonValue object();
  static JsonValue array();
  static JsonValue str(std::string s);
  static JsonValue number(double v);   // infinities serialise as "inf"/"-inf"
  static JsonValue integer(long long v);
  static JsonValue boolean(bool b);

  JsonValue& add(const std::string& key, JsonValue v);   // object member
  JsonValue& push(JsonValue v);                          // array element
  std::string dump(int indent = 2) const;

 private:
  enum class Kind { Object, Array, String, Number, Integer, Bool };
  Kind kind_ = Kind::Object;
  std::string string_;
  double number_ = 0.0;
  long long integer_ = 0;
  bool bool_ = false;
  std::vector<std::pair<std::string, JsonValue>> members_;
  std::vector<JsonValue> elements_;
  void write(std::string& out, int indent, int depth) const;
};

std::string format_double(double v);  // %.17g

/// CSV for a bound curve: header "r,bound", one row per radius.
std::string bound_curve_csv(const BoundCurve& curve);

/// Minimal SVG polyline plot of the curve (axes + polyline, no renderer).
std::string bound_curve_svg(const BoundCurve& curve);

}  // namespace supersol
