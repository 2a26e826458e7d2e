#include "fuzcal/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fuzcal {

namespace {

void write_number(std::ostringstream &os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  std::string_view s(buf, res.ptr - buf);
  os << s;
  // keep doubles recognizable as such
  if (s.find_first_of(".en") == std::string_view::npos) os << ".0";
}

void write(std::ostringstream &os, const Json &j, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string inner((indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto &[key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(key).dump() << ": ";
        write(os, value, indent + 1);
      }
      os << '\n' << pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json &e) { return e.is_primitive(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write(os, j[i], indent + 1);
        }
        os << ']';
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write(os, j[i], indent + 1);
      }
      os << '\n' << pad << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump_json(const Json &j) {
  std::ostringstream os;
  write(os, j, 0);
  os << '\n';
  return os.str();
}

}  // namespace fuzcal
