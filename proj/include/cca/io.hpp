#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cca {

/// Formats a double with 17 significant digits, '.' decimal separator,
/// locale-independent (shortest form of the general format).
std::string format_double(double value);

/// Renders a (t, fidelity) table as CSV with the fixed header "t,fidelity".
std::string curve_to_csv(const std::vector<std::pair<double, double>>& points);

/// Writes content to path atomically: a temp file in the same directory is
/// renamed over the target; on failure the temp file is removed and the
/// target is left untouched.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cca
