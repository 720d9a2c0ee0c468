#pragma once

namespace pursuitlab {

inline constexpr const char* kVersion = "0.1.0";

}
