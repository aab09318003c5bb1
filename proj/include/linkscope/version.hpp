#pragma once

namespace linkscope {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace linkscope
