#pragma once

// Run configuration: JSON in, JSON out. Every field has a default except the
// pieces a subcommand needs (evaluation point or grid), which are checked by
// the runner.

#include "deltapair/kinematics.hpp"
#include "deltapair/pulse_train.hpp"
#include "deltapair/quadrature.hpp"
#include "deltapair/spectral.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deltapair {

inline constexpr std::string_view kEngineName = "deltapair";
inline constexpr std::string_view kEngineVersion = "0.1.0";

struct GridConfig {
    GridAxis q1{};
    GridAxis q2{};

    friend bool operator==(const GridConfig &a, const GridConfig &b) noexcept {
        auto same = [](const GridAxis &x, const GridAxis &y) {
            return x.min == y.min && x.max == y.max && x.n == y.n;
        };
        return same(a.q1, b.q1) && same(a.q2, b.q2);
    }
};

struct EvaluationConfig {
    std::optional<double> u{};
    std::optional<Vec2> qperp{};
    std::optional<GridConfig> grid{};

    friend bool operator==(const EvaluationConfig &, const EvaluationConfig &) = default;
};

enum class OutputFormat { csv, json };

struct OutputConfig {
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> path{};
    bool include_prefactor = true;
    bool breakdown = false;

    friend bool operator==(const OutputConfig &, const OutputConfig &) = default;
};

struct ValidationConfig {
    std::size_t samples = 10'000;
    std::uint64_t seed = 1;
    std::size_t quadrature_configs = 3;

    friend bool operator==(const ValidationConfig &, const ValidationConfig &) = default;
};

struct RunConfig {
    double alpha = kDefaultAlpha;
    PhotonProbe photon{};
    /// As written; normalized by the runner.
    std::vector<Jump> train{};
    EvaluationConfig evaluation{};
    IntegrationSpec integration{};
    OutputConfig output{};
    ValidationConfig validation{};

    friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

class ConfigError : public std::runtime_error {
public:
    enum class Kind { syntax, schema, range };

    ConfigError(Kind kind, std::string pointer, const std::string &message);

    Kind kind() const noexcept { return kind_; }
    /// JSON pointer to the offending value ("" for the document root).
    const std::string &pointer() const noexcept { return pointer_; }

private:
    Kind kind_;
    std::string pointer_;
};

const char *to_string(ConfigError::Kind kind) noexcept;

/// Throws ConfigError. Unknown keys are schema errors.
RunConfig parse_config(std::string_view text);

/// Complete document with every default spelled out; parse_config inverts it.
std::string emit_config(const RunConfig &config);

} // namespace deltapair
