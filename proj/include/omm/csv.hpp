#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omm/response.hpp"

namespace omm {

/// Shortest decimal text that reads back to exactly the same double.
std::string format_double(double v);

/// Strict decimal parse of a whole cell; throws std::invalid_argument.
double parse_double(std::string_view s);

std::vector<std::string> split_csv_line(std::string_view line);

/// Drops a trailing '\r'.
std::string_view trim_eol(std::string_view line);

inline constexpr std::string_view kSpectrumHeader =
    "delta,re_epsT,im_epsT,lambda,lambda_tilde,fwm";

/// One row per point, in input order, full double precision.
void write_spectrum_csv(std::ostream& out, std::span<const ResponsePoint> points);
std::string spectrum_csv(std::span<const ResponsePoint> points);

}  // namespace omm
