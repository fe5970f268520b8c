#pragma once

namespace edm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace edm
