#pragma once

namespace conegauge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace conegauge
