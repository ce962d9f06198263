#pragma once

#define RINGEX_VERSION "1.0.0"

namespace ringex {
inline const char* version() { return RINGEX_VERSION; }
}  // namespace ringex
