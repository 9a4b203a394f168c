#pragma once

#ifndef SWIVEL_VERSION_STRING
#define SWIVEL_VERSION_STRING "0.0.0"
#endif

namespace swivel {

inline constexpr const char* kVersion = SWIVEL_VERSION_STRING;

}  // namespace swivel
