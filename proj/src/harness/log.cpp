#include "crn/harness/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace crn::harness {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CRN_SENSE_LOG");
        if (env == nullptr)
            return LogLevel::Warn;
        if (std::strcmp(env, "off") == 0)
            return LogLevel::Off;
        if (std::strcmp(env, "error") == 0)
            return LogLevel::Error;
        if (std::strcmp(env, "warn") == 0)
            return LogLevel::Warn;
        if (std::strcmp(env, "info") == 0)
            return LogLevel::Info;
        if (std::strcmp(env, "debug") == 0)
            return LogLevel::Debug;
        return LogLevel::Warn;
    }();
    return level;
}

void log_msg(LogLevel level, const char* fmt, ...) {
    if (static_cast<int>(level) > static_cast<int>(log_level()))
        return;
    static const char* const names[] = {"", "error", "warn", "info", "debug"};
    std::fprintf(stderr, "[crn-sense %s] ", names[static_cast<int>(level)]);
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stderr, fmt, args);
    va_end(args);
    std::fputc('\n', stderr);
}

} // namespace crn::harness
