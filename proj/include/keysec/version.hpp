#pragma once

namespace keysec {

inline constexpr const char* kToolName = "keysec";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace keysec
