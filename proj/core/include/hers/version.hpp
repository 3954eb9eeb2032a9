#pragma once

namespace hers {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hers
