#include "glkde/sample_io.hpp"

#include "glkde/bench.hpp"
#include "glkde/errors.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace glkde {

namespace {

std::string
trim(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

} // namespace

void
write_sample_csv(std::ostream& out, std::span<const double> sample)
{
  for (double x : sample) {
    out << format_double(x) << '\n';
  }
}

void
write_sample_csv(const std::string& path, std::span<const double> sample)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  write_sample_csv(out, sample);
  if (!out) {
    throw IoError("failed writing '" + path + "'");
  }
}

std::vector<double>
read_sample_csv(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string field = trim(line);
    if (field.empty()) {
      continue;
    }
    const auto comma = field.find(',');
    if (comma != std::string::npos) {
      field = trim(field.substr(0, comma));
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      if (values.empty() && line_no == 1) {
        continue;
      }
      throw IoError("'" + path + "' line " + std::to_string(line_no) + ": not a number: '" +
                    field + "'");
    }
    values.push_back(v);
  }
  return values;
}

} // namespace glkde
