#include "adaptem/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

namespace adaptem {

namespace {
std::atomic<LogLevel> g_level{LogLevel::warning};
std::mutex g_sink_mutex;
} // namespace

void set_log_level(LogLevel level) noexcept { g_level.store(level); }

LogLevel log_level() noexcept { return g_level.load(); }

void log_warning(std::string_view message) {
    if (g_level.load() > LogLevel::warning) return;
    std::lock_guard lock(g_sink_mutex);
    std::clog << "[adaptem] warning: " << message << '\n';
}

} // namespace adaptem
