#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hammerstein {

/// Minimal ordered JSON value for the machine reports. Emission is fully
/// deterministic: keys keep insertion order and numbers are printed with 17
/// significant digits. Non-finite numbers are emitted as the strings
/// "inf", "-inf", "nan".
class Json {
 public:
  static Json object() { Json j; j.kind_ = Kind::object; return j; }
  static Json array() { Json j; j.kind_ = Kind::array; return j; }
  static Json number(double v) { Json j; j.kind_ = Kind::number; j.num_ = v; return j; }
  static Json integer(long long v) { Json j; j.kind_ = Kind::integer; j.int_ = v; return j; }
  static Json boolean(bool v) { Json j; j.kind_ = Kind::boolean; j.bool_ = v; return j; }
  static Json string(std::string v) { Json j; j.kind_ = Kind::string; j.str_ = std::move(v); return j; }
  static Json null() { return Json{}; }

  Json& set(const std::string& key, Json v) {
    members_.emplace_back(key, std::move(v));
    return *this;
  }
  Json& push(Json v) {
    elements_.push_back(std::move(v));
    return *this;
  }

  template <typename It>
  static Json number_array(It begin, It end) {
    Json a = array();
    for (It it = begin; it != end; ++it) a.push(number(static_cast<double>(*it)));
    return a;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    out.push_back('\n');
    return out;
  }

 private:
  enum class Kind { null, object, array, number, integer, boolean, string };
  Kind kind_ = Kind::null;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> elements_;

  static void write_escaped(std::string& out, const std::string& s) {
    out.push_back('"');
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
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  static void write_number(std::string& out, double v) {
    if (std::isnan(v)) { out += "\"nan\""; return; }
    if (std::isinf(v)) { out += v > 0 ? "\"inf\"" : "\"-inf\""; return; }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }

  void write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad1(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (kind_) {
      case Kind::null: out += "null"; break;
      case Kind::boolean: out += bool_ ? "true" : "false"; break;
      case Kind::integer: out += std::to_string(int_); break;
      case Kind::number: write_number(out, num_); break;
      case Kind::string: write_escaped(out, str_); break;
      case Kind::object: {
        if (members_.empty()) { out += "{}"; break; }
        out += "{\n";
        for (std::size_t i = 0; i < members_.size(); ++i) {
          out += pad1;
          write_escaped(out, members_[i].first);
          out += ": ";
          members_[i].second.write(out, indent, depth + 1);
          if (i + 1 < members_.size()) out += ",";
          out += "\n";
        }
        out += pad + "}";
        break;
      }
      case Kind::array: {
        if (elements_.empty()) { out += "[]"; break; }
        out += "[\n";
        for (std::size_t i = 0; i < elements_.size(); ++i) {
          out += pad1;
          elements_[i].write(out, indent, depth + 1);
          if (i + 1 < elements_.size()) out += ",";
          out += "\n";
        }
        out += pad + "]";
        break;
      }
    }
  }
};

}  // namespace hammerstein
