#pragma once

#include <cstddef>

namespace casa::limits {

// Largest algebra that may be materialized or used as a hom-search domain.
inline constexpr std::size_t kDomainCap = 4096;

// Largest configuration space A^G walked exhaustively.
inline constexpr std::size_t kConfigCap = 65536;

}  // namespace casa::limits
