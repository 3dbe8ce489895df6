#pragma once

namespace sfpd {
inline constexpr const char* kVersion = "0.1.0";
}
