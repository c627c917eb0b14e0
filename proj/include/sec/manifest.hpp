#pragma once

#include <string>

#include <json.hpp>

namespace sec {

// Adds library/format version fields and writes pretty JSON.  Manifests carry
// no timestamps or host data, so identical runs produce identical bytes.
void write_manifest(const std::string& path, nlohmann::json params);

nlohmann::json load_manifest(const std::string& path);

}  // namespace sec
