#include "cli/cloud_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "maxsliced/errors.hpp"

namespace maxsliced::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

PointCloud parse_cloud(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw InvalidArgument("point cloud file is empty");

  std::vector<double> data;
  std::size_t dim = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string line_no = std::to_string(li + 1);
    const auto line = trim(lines[li]);
    if (line.empty()) throw InvalidArgument("line " + line_no + ": empty row");
    std::size_t count = 0;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = line.find(',', pos);
      const auto token = trim(line.substr(pos, comma == std::string_view::npos ? line.npos
                                                                                : comma - pos));
      double value = 0.0;
      const auto* first = token.data();
      const auto* last = token.data() + token.size();
      if (!token.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw InvalidArgument("line " + line_no + ": not a finite number: '" +
                              std::string(token) + "'");
      }
      data.push_back(value);
      ++count;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (li == 0) {
      dim = count;
    } else if (count != dim) {
      throw InvalidArgument("line " + line_no + ": ragged row with " + std::to_string(count) +
                            " values, expected " + std::to_string(dim));
    }
  }
  return PointCloud(lines.size(), dim, std::move(data));
}

PointCloud load_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open point cloud file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cloud(buf.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_cloud(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) out << ',';
      out << format_real(p[k]);
    }
    out << '\n';
  }
}

}  // namespace maxsliced::cli
