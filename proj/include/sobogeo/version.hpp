#pragma once

namespace sobogeo {
inline constexpr const char* kVersion = "0.1.0";
}
