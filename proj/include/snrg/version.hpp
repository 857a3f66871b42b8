#pragma once

namespace snrg {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace snrg
