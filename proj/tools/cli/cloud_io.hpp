#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "maxsliced/types.hpp"

namespace maxsliced::cli {

/// Headerless CSV, one point per line. Throws InvalidArgument naming the
/// offending line for ragged rows, non-numeric tokens or an empty input.
PointCloud parse_cloud(std::string_view text);
PointCloud load_cloud(const std::string& path);

/// %.17g, which reads back to the same double. A trailing ".0" is added
/// when the text would otherwise look like an integer.
std::string format_real(double value);

void write_cloud(std::ostream& out, const PointCloud& cloud);

}  // namespace maxsliced::cli
