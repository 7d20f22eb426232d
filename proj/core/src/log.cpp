#include "fads/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace fads {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("FADS_LOG");
        if (env == nullptr) return LogLevel::warn;
        const std::string v(env);
        if (v == "debug") return LogLevel::debug;
        if (v == "info") return LogLevel::info;
        return LogLevel::warn;
    }();
    return level;
}

namespace {

void emit(const char* tag, std::string_view msg) {
    std::fprintf(stderr, "[%s] %.*s\n", tag, static_cast<int>(msg.size()), msg.data());
}

}  // namespace

void log_debug(std::string_view msg) {
    if (log_level() <= LogLevel::debug) emit("debug", msg);
}

void log_info(std::string_view msg) {
    if (log_level() <= LogLevel::info) emit("info", msg);
}

void log_warn(std::string_view msg) { emit("warn", msg); }

}  // namespace fads
