#pragma once

#include <string>

namespace drough {

// Minimal stderr logger; level read once from DROUGH_LOG (error|info|debug).
enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_level();
void log_message(LogLevel level, const std::string& msg);

}  // namespace drough
