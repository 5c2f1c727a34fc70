#pragma once

namespace optpredict {

inline constexpr const char* kVersion = "1.0.0";

} // namespace optpredict
