#pragma once

#include <string>

#include "sec/image.hpp"

namespace sec {

// Decodes a PNG (8/16-bit gray/RGB, palette and alpha accepted; alpha is
// dropped) or binary PPM/PGM (P5/P6, maxval up to 65535) into fp64 [0,1].
// Throws DataError on unreadable or malformed files.
Image load_image(const std::string& path);

// 16-bit output: PNG when the extension is .png, PPM/PGM otherwise.
void save_image(const Image& img, const std::string& path);

}  // namespace sec
