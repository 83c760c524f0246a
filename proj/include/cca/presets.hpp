#pragma once

#include <map>
#include <string>
#include <string_view>

namespace cca {

/// Named scenario presets compiled into the binary from scenarios/*.json.
/// Keys are the file stems; values are the raw JSON documents.
const std::map<std::string, std::string_view>& preset_table();

}  // namespace cca
