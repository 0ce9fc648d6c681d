#pragma once

#include <functional>
#include <string_view>

namespace nlch {

using WarningHandler = std::function<void(std::string_view)>;

/// Routes a warning to the installed handler (stderr by default).
void warn(std::string_view message);
/// Installs a handler and returns the previous one. An empty handler mutes warnings.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace nlch
