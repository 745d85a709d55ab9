#pragma once

#include <string_view>

namespace adaptem {

enum class LogLevel { debug, warning, error, off };

void set_log_level(LogLevel level) noexcept;
[[nodiscard]] LogLevel log_level() noexcept;

void log_warning(std::string_view message);

} // namespace adaptem
