#pragma once

#include <string>
#include <vector>

#include "quasispec/sweep/config.hpp"

namespace quasispec::sweep {

/// Identifiers accepted by preset().
std::vector<std::string> preset_ids();

/// Parameter set of one reproduction target. Output path, format and worker
/// count are left for the caller. Throws ConfigInvalid for an unknown id.
SweepConfig preset(const std::string& id);

}  // namespace quasispec::sweep
