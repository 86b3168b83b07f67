#pragma once

namespace l2stokes {

inline constexpr const char* version = "1.0.0";

} // namespace l2stokes
