#pragma once

namespace ryd {
inline constexpr const char* kVersion = "0.1.0";
}
