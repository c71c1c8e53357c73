#pragma once

namespace lmoment {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lmoment
