#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace flagalg {

/// Size caps. Flag enumeration and closure are exponential in the inputs, so
/// everything fails fast with SizeLimitExceeded / EnumerationLimitExceeded
/// instead of exhausting memory.
struct Limits {
  std::size_t max_relation_bits = std::size_t{1} << 20;
  int max_boolean_rank = 20;
  int max_partition_n = 9;
  std::size_t max_flags = 5'000'000;
  int max_index_k = 8;
};

/// Defaults, with FLAGALG_MAX_FLAGS applied when set.
inline Limits default_limits() {
  Limits l;
  if (const char* env = std::getenv("FLAGALG_MAX_FLAGS")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) l.max_flags = static_cast<std::size_t>(v);
    } catch (...) {
      // malformed values are ignored
    }
  }
  return l;
}

}  // namespace flagalg
