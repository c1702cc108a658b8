#pragma once

namespace vimu {

inline constexpr const char* kToolVersion = "vimu 0.1.0";

}  // namespace vimu
