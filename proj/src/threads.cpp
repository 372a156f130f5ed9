#include "pcbias/threads.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace pcbias {

unsigned worker_count() {
  if (const char* env = std::getenv("PARITY_BIAS_THREADS")) {
    unsigned value = 0;
    const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), value);
    if (ec == std::errc{} && *ptr == '\0' && value > 0) return value;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace pcbias
