#pragma once

namespace homsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace homsim
