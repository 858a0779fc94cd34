#pragma once

// Minimal deterministic JSON emitter for report files: object keys keep
// insertion order, floating-point values print with 17 significant digits
// (exact double round-trip), and serialization is byte-stable.  Only
// emission is supported; parsing stays out of scope.

#include <concepts>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cclab {

class Json {
 public:
  Json() : value_(nullptr) {}
  Json(std::nullptr_t) : value_(nullptr) {}
  Json(bool v) : value_(v) {}
  Json(double v) : value_(v) {}
  template <typename T>
    requires std::integral<T> && (!std::same_as<T, bool>)
  Json(T v) : value_(static_cast<std::int64_t>(v)) {}
  Json(const char* v) : value_(std::string(v)) {}
  Json(std::string v) : value_(std::move(v)) {}

  static Json object() {
    Json j;
    j.value_ = Members{};
    return j;
  }
  static Json array() {
    Json j;
    j.value_ = Elements{};
    return j;
  }

  Json& set(std::string key, Json v) {
    std::get<Members>(value_).emplace_back(std::move(key), std::move(v));
    return *this;
  }
  Json& push(Json v) {
    std::get<Elements>(value_).push_back(std::move(v));
    return *this;
  }

  std::string dump(int indent = 2) const {
    std::string out;
    write(out, indent, 0);
    out.push_back('\n');
    return out;
  }

 private:
  using Members = std::vector<std::pair<std::string, Json>>;
  using Elements = std::vector<Json>;
  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string,
               Elements, Members>
      value_;

  static void write_string(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
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

  void write(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (value_.index()) {
      case 0: out += "null"; break;
      case 1: out += std::get<bool>(value_) ? "true" : "false"; break;
      case 2: out += std::to_string(std::get<std::int64_t>(value_)); break;
      case 3: {
        const double v = std::get<double>(value_);
        if (v != v || v == std::numeric_limits<double>::infinity() ||
            v == -std::numeric_limits<double>::infinity())
          throw std::invalid_argument("non-finite value in JSON report");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        break;
      }
      case 4: write_string(out, std::get<std::string>(value_)); break;
      case 5: {
        const Elements& elems = std::get<Elements>(value_);
        if (elems.empty()) {
          out += "[]";
          break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < elems.size(); ++i) {
          out += pad;
          elems[i].write(out, indent, depth + 1);
          if (i + 1 < elems.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += close_pad;
        out.push_back(']');
        break;
      }
      case 6: {
        const Members& members = std::get<Members>(value_);
        if (members.empty()) {
          out += "{}";
          break;
        }
        out += "{\n";
        for (std::size_t i = 0; i < members.size(); ++i) {
          out += pad;
          write_string(out, members[i].first);
          out += ": ";
          members[i].second.write(out, indent, depth + 1);
          if (i + 1 < members.size()) out.push_back(',');
          out.push_back('\n');
        }
        out += close_pad;
        out.push_back('}');
        break;
      }
    }
  }
};

}  // namespace cclab
