#ifndef BETHE_JSON_WRITER_HPP
#define BETHE_JSON_WRITER_HPP

#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "bethe/fock.hpp"

namespace bethe::json {

// Deterministic JSON emitter: object keys are kept sorted and every float is
// written with 17 significant digits, so output is byte-stable and doubles
// round-trip exactly. (General-purpose JSON libraries pick shortest-form
// float encodings, which golden-file comparisons cannot pin.)
class Value {
 public:
  Value() : data_(nullptr) {}
  Value(std::nullptr_t) : data_(nullptr) {}
  Value(bool b) : data_(b) {}
  Value(int i) : data_(static_cast<std::int64_t>(i)) {}
  Value(std::int64_t i) : data_(i) {}
  Value(std::uint64_t i) : data_(static_cast<std::int64_t>(i)) {}
  Value(double d) : data_(d) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(std::string s) : data_(std::move(s)) {}

  static Value array() {
    Value v;
    v.data_ = Array{};
    return v;
  }
  static Value object() {
    Value v;
    v.data_ = Object{};
    return v;
  }

  Value& push_back(Value item) {
    std::get<Array>(data_).push_back(std::move(item));
    return *this;
  }

  Value& set(std::string key, Value item) {
    std::get<Object>(data_)[std::move(key)] = std::move(item);
    return *this;
  }

  void write(std::ostream& os) const {
    if (std::holds_alternative<std::nullptr_t>(data_)) {
      os << "null";
    } else if (const bool* b = std::get_if<bool>(&data_)) {
      os << (*b ? "true" : "false");
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&data_)) {
      os << *i;
    } else if (const double* d = std::get_if<double>(&data_)) {
      write_double(os, *d);
    } else if (const std::string* s = std::get_if<std::string>(&data_)) {
      write_string(os, *s);
    } else if (const Array* a = std::get_if<Array>(&data_)) {
      os << '[';
      for (std::size_t k = 0; k < a->size(); ++k) {
        if (k) os << ',';
        (*a)[k].write(os);
      }
      os << ']';
    } else {
      const Object& o = std::get<Object>(data_);
      os << '{';
      bool first = true;
      for (const auto& [key, item] : o) {
        if (!first) os << ',';
        first = false;
        write_string(os, key);
        os << ':';
        item.write(os);
      }
      os << '}';
    }
  }

  std::string dump() const {
    std::ostringstream os;
    write(os);
    return os.str();
  }

 private:
  using Array = std::vector<Value>;
  using Object = std::map<std::string, Value>;

  static void write_double(std::ostream& os, double d) {
    if (!std::isfinite(d)) {
      os << "null";
      return;
    }
    if (d == 0.0) d = 0.0;  // never emit -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    os << buf;
  }

  static void write_string(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
      switch (c) {
        case '"': os << "\\\""; break;
        case '\\': os << "\\\\"; break;
        case '\n': os << "\\n"; break;
        case '\t': os << "\\t"; break;
        case '\r': os << "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            os << buf;
          } else {
            os << c;
          }
      }
    }
    os << '"';
  }

  std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> data_;
};

inline Value complex_value(Complex z) {
  Value v = Value::array();
  v.push_back(z.real());
  v.push_back(z.imag());
  return v;
}

inline Value complex_list(const std::vector<Complex>& zs) {
  Value v = Value::array();
  for (const Complex& z : zs) v.push_back(complex_value(z));
  return v;
}

}  // namespace bethe::json

#endif
