#pragma once

namespace esig {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace esig
