#include "cca/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "cca/errors.hpp"

namespace cca {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string curve_to_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "t,fidelity\n";
  for (const auto& [t, f] : points) {
    out += format_double(t);
    out += ',';
    out += format_double(f);
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
    if (!stream) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    stream.write(content.data(), static_cast<std::streamsize>(content.size()));
    stream.flush();
    if (!stream) {
      stream.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("failed while writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ec2;
    std::filesystem::remove(tmp, ec2);
    throw IoError("failed to move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace cca
