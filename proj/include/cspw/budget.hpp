#pragma once

#include <cstdint>

namespace cspw {

/// Caps on the exponential parts of the library.
struct Budget {
  /// Assignments enumerated by any brute-force operation.
  std::uint64_t assignments = std::uint64_t{1} << 24;
  /// Tuple triples inspected by closure and polymorphism checks.
  std::uint64_t triples = std::uint64_t{1} << 27;
};

}  // namespace cspw
