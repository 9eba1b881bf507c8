#pragma once

namespace surfbath {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace surfbath
