#pragma once

namespace sec {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever an on-disk format (checkpoints, calibration sets,
// manifests, CSV schemas) changes shape.
inline constexpr int kFormatVersion = 1;

}  // namespace sec
