#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace secant::cli {

namespace detail {

inline void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

inline void write(std::ostream& os, const nlohmann::json& j, int depth) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        indent(os, depth + 1);
        os << nlohmann::json(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      indent(os, depth);
      os << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool nested = std::any_of(j.begin(), j.end(), [](const auto& e) { return e.is_structured(); });
      if (!nested) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) os << ", ";
          write(os, j[i], depth + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        indent(os, depth + 1);
        write(os, j[i], depth + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      indent(os, depth);
      os << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        os << "\"nan\"";
      } else if (std::isinf(v)) {
        os << (v > 0 ? "\"+inf\"" : "\"-inf\"");
      } else {
        std::ostringstream num;
        num << std::setprecision(17) << v;
        std::string s = num.str();
        // Keep floats recognisable as floats after a round trip.
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        os << s;
      }
      return;
    }
    default:
      os << j.dump();
      return;
  }
}

}  // namespace detail

/// Pretty JSON with every double printed to 17 significant digits.
/// Non-finite doubles become the strings "+inf", "-inf", "nan".
inline std::string to_json_text(const nlohmann::json& j) {
  std::ostringstream os;
  detail::write(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace secant::cli
