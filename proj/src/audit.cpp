#include "dioph/audit.hpp"

#include <algorithm>
#include <mutex>

namespace dioph::audit {

namespace {

std::mutex g_mutex;
std::vector<std::string> g_entries;

}  // namespace

void warn(std::string message) {
  std::lock_guard lock(g_mutex);
  g_entries.push_back(std::move(message));
}

std::vector<std::string> drain() {
  std::lock_guard lock(g_mutex);
  std::vector<std::string> out;
  out.swap(g_entries);
  // Worker interleaving is arbitrary; sorting keeps summaries reproducible.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dioph::audit
