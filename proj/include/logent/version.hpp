#pragma once

#define LOGENT_VERSION_MAJOR 1
#define LOGENT_VERSION_MINOR 0
#define LOGENT_VERSION_PATCH 0

namespace logent {
inline constexpr const char* version = "1.0.0";
}
