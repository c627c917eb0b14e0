#include "sec/manifest.hpp"

#include <fstream>

#include "sec/errors.hpp"
#include "sec/version.hpp"

namespace sec {

void write_manifest(const std::string& path, nlohmann::json params) {
    params["library_version"] = kVersion;
    params["format_version"] = kFormatVersion;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("manifest: cannot open for writing: " + path);
    out << params.dump(2) << "\n";
    if (!out.good()) throw DataError("manifest: write failed: " + path);
}

nlohmann::json load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("manifest: cannot open: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("manifest: invalid JSON: ") + e.what());
    }
}

}  // namespace sec
