#pragma once

// Subcommand execution. Each run_* builds the primary artifact (CSV or JSON
// text) and a JSON sidecar carrying the effective configuration, engine
// version, tolerances and normalization; `emit` writes both.

#include "deltapair/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace deltapair {

enum class Command { density, grid, total, validate };

const char *to_string(Command command) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;

namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int failed = 1;  ///< non-convergence or a failed check
inline constexpr int config = 2;
inline constexpr int io = 3;
} // namespace exit_status

struct RunOptions {
    /// Grid fan-out only; results do not depend on it.
    unsigned threads = 1;
};

struct RunResult {
    std::string body;
    std::string metadata;
    bool ok = true;
    /// JSON failure report, empty when ok.
    std::string report;
};

// Missing inputs a command needs (e.g. the evaluation point) are reported as
// ConfigError with the pointer of the absent key.
RunResult run_density(const RunConfig &config);
RunResult run_grid(const RunConfig &config, const RunOptions &options = {});
RunResult run_total(const RunConfig &config);
RunResult run_validate(const RunConfig &config);
RunResult run(Command command, const RunConfig &config, const RunOptions &options = {});

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary and renames over `path`. Throws IoError.
void write_atomic(const std::filesystem::path &path, std::string_view content);

/// `<path>.meta.json`.
std::filesystem::path sidecar_path(const std::filesystem::path &path);

/// Writes body and sidecar to config.output.path, or the body alone to `out`
/// when no path is set. Failure reports go to `err`. Returns the exit status;
/// throws IoError.
int emit(const RunResult &result, const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace deltapair
