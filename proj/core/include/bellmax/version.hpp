#pragma once

namespace bellmax {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace bellmax
