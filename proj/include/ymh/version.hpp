#pragma once

namespace ymh {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace ymh
