#pragma once

namespace thermowit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace thermowit
