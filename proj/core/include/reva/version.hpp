#pragma once

namespace reva {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace reva
