#pragma once

namespace mmsplit {

inline constexpr const char* version = "0.1.0";

}
