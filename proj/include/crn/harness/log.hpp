#pragma once

#include <cstdarg>

namespace crn::harness {

/// Verbosity, controlled by the CRN_SENSE_LOG environment variable
/// (off | error | warn | info | debug). Default: warn.
enum class LogLevel : int { Off = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

LogLevel log_level();

void log_msg(LogLevel level, const char* fmt, ...)
#if defined(__GNUC__)
    __attribute__((format(printf, 2, 3)))
#endif
    ;

#define CRN_LOG_ERROR(...) ::crn::harness::log_msg(::crn::harness::LogLevel::Error, __VA_ARGS__)
#define CRN_LOG_WARN(...) ::crn::harness::log_msg(::crn::harness::LogLevel::Warn, __VA_ARGS__)
#define CRN_LOG_INFO(...) ::crn::harness::log_msg(::crn::harness::LogLevel::Info, __VA_ARGS__)
#define CRN_LOG_DEBUG(...) ::crn::harness::log_msg(::crn::harness::LogLevel::Debug, __VA_ARGS__)

} // namespace crn::harness
