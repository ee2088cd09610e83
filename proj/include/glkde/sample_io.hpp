#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace glkde {

/// One value per line, 17 significant digits, no header.
void write_sample_csv(std::ostream& out, std::span<const double> sample);
void write_sample_csv(const std::string& path, std::span<const double> sample);

/// Reads a one-column CSV. A non-numeric first line is taken as a header;
/// blank lines are skipped. Throws IoError naming the file and line.
std::vector<double> read_sample_csv(const std::string& path);

} // namespace glkde
