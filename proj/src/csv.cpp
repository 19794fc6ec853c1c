#include "omm/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace omm {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string_view trim_eol(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void write_spectrum_csv(std::ostream& out, std::span<const ResponsePoint> points) {
  out << kSpectrumHeader << '\n';
  for (const auto& r : points) {
    out << format_double(r.delta) << ',' << format_double(r.eps_T.real()) << ','
        << format_double(r.eps_T.imag()) << ',' << format_double(r.lambda) << ','
        << format_double(r.lambda_tilde) << ',' << format_double(r.fwm) << '\n';
  }
}

std::string spectrum_csv(std::span<const ResponsePoint> points) {
  std::ostringstream s;
  write_spectrum_csv(s, points);
  return s.str();
}

}  // namespace omm
