#pragma once

#include <string>

#include "sec/model.hpp"

namespace sec {

// Versioned JSON container: config, fourier embedding (when present), and the
// flat parameter vector.  Doubles are emitted with shortest round-trip
// encoding, so save -> load reproduces the network bit-exactly.
void save_checkpoint(const Network& net, const std::string& path);
Network load_checkpoint(const std::string& path);

std::string checkpoint_to_json(const Network& net);
Network checkpoint_from_json(const std::string& text);

}  // namespace sec
