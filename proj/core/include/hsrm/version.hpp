#pragma once

namespace hsrm {

inline constexpr const char* kToolName = "hsrm";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hsrm
