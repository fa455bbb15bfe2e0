#pragma once

namespace spinlab {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace spinlab
