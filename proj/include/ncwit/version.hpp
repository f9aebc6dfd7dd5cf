#pragma once

namespace ncwit {
inline constexpr const char* kVersion = "0.1.0";
}
