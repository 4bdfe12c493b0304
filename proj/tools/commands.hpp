#pragma once

#include <string>

#include "multiport/run_config.hpp"
#include "report.hpp"

namespace multiport::cli {

/// Exit codes: 0 success, 1 invariant violation, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming a directory of Gamma cache files, used when
/// `visibility` is run without --goldens.
inline constexpr const char* kGoldenDirVariable = "MULTIPORT_GOLDEN_DIR";

int devices_check(const RunConfig& config, Report& report, bool inject_fault);
int fringes(const RunConfig& config, Report& report);
int visibility(const RunConfig& config, Report& report);
int fisher(const RunConfig& config, Report& report);
int protocol(const RunConfig& config, Report& report);
int multiparam(const RunConfig& config, Report& report);

}  // namespace multiport::cli
