#pragma once

namespace heralded {
inline constexpr const char* kVersion = "0.1.0";
}
