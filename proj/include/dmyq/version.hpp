#pragma once

namespace dmyq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dmyq
