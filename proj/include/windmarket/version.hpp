#pragma once

namespace windmarket {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace windmarket
