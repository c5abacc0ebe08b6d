#pragma once

#include "curlwave/config.hpp"
#include "curlwave/synthesis.hpp"
#include "curlwave/verification.hpp"

#include <iosfwd>
#include <string>

namespace curlwave {

/// Exit codes of the command line tool.
enum ExitCode : int { ExitPass = 0, ExitCheckFailure = 1, ExitUsage = 2 };

struct CommandOptions {
    std::string out;          ///< overrides the output path of the config
    std::optional<std::uint64_t> seed;
    int threads = 0;          ///< 0: CURLWAVE_THREADS or the OpenMP default
};

/// Thread count from the flag, then CURLWAVE_THREADS, then 0 (OpenMP default).
/// Throws ValidationError for a malformed environment value.
int resolve_threads(int flag_value);

/// Field described by the config (kind, geometry, coefficients, omega/T, phase shift).
WaveField build_field(const RunConfig& cfg);

/// Verification suite for the configured field.
Diagnostics run_checks(const RunConfig& cfg, const WaveField& field);

int cmd_periodmap(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_synthesize(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_verify(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);
int cmd_approximate(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log);

/// Full CLI entry point (argument parsing, error-to-exit-code mapping).
int run_cli(int argc, char** argv);

}  // namespace curlwave
