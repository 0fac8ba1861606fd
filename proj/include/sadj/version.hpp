#pragma once

namespace sadj {
inline constexpr const char* sadj_version = "0.1.0";
}
