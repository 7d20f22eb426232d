#pragma once

#include <string_view>

namespace fads {

// Verbosity comes from the FADS_LOG environment variable: "debug" or "info".
// Anything else keeps only warnings. Messages go to stderr.
enum class LogLevel { debug = 0, info = 1, warn = 2 };

LogLevel log_level();

void log_debug(std::string_view msg);
void log_info(std::string_view msg);
void log_warn(std::string_view msg);

}  // namespace fads
