#pragma once

#include <string>
#include <vector>

namespace dioph::audit {

/// Records a reproducibility warning (near-tie threshold decisions and the
/// like). Thread-safe; entries are kept in insertion order.
void warn(std::string message);

/// Returns all warnings recorded so far, sorted, and clears the log.
std::vector<std::string> drain();

}  // namespace dioph::audit
