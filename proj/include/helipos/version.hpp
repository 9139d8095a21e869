#pragma once

#define HELIPOS_VERSION "0.1.0"

namespace helipos {

inline constexpr const char* version() { return HELIPOS_VERSION; }

}  // namespace helipos
