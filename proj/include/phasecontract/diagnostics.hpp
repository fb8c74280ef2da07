#pragma once

#include <functional>
#include <string_view>

namespace phasecontract {

using WarningHandler = std::function<void(std::string_view)>;

// Non-fatal warnings (truncation adequacy, angle overflow). The default
// handler writes a single line to stderr.
void warn(std::string_view message);

// Returns the previous handler. Not thread-safe with respect to concurrent
// warn() calls; install handlers before starting parallel work.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace phasecontract
