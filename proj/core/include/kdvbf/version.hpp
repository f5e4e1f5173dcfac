#pragma once

namespace kdvbf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kdvbf
