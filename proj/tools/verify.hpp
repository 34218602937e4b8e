#pragma once

#include "report.hpp"
#include "settings.hpp"

namespace taub::cli {

/// Runs the verification suite named in settings.suite and returns the full
/// report. `passed` is false when any check exceeds its threshold or throws.
Json verify_suite(const Settings& settings, bool& passed);

}  // namespace taub::cli
