#pragma once

// Executable identities and structure checks. Each check samples its own
// inputs from a seeded generator and reports the worst error it saw against
// a fixed tolerance.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace deltapair {

struct CheckResult {
    std::string name;
    bool passed = false;
    double metric = 0.0;     ///< worst error seen, in the check's own measure
    double tolerance = 0.0;
    std::size_t samples = 0;
    double seconds = 0.0;
    std::string detail;
};

// Closed-form reductions of the master formula. The error measure is
// |master - closed| / (prefactor * magnitude), magnitude being the sum of
// absolute diagonal leg terms.
CheckResult check_single_reduction(std::size_t samples, std::uint64_t seed);
CheckResult check_opposite_reduction(std::size_t samples, std::uint64_t seed);
CheckResult check_samesign_reduction(std::size_t samples, std::uint64_t seed);
CheckResult check_fourpulse_reduction(std::size_t samples, std::uint64_t seed);

/// Four-pulse factor at xi = 1e-3 against sin^2(4 Theta0) / cos^2(Theta0),
/// on the q1 = 0 line, error in units of the factor's full scale 16.
CheckResult check_weak_field_limit(std::size_t samples, std::uint64_t seed);
/// 16 sin^2 x cos^2 2x = sin^2 4x / cos^2 x, relative.
CheckResult check_trig_identity(std::size_t samples, std::uint64_t seed);

CheckResult check_nonnegativity(std::size_t samples, std::uint64_t seed);
/// l = 0: negating every da maps f(q) to f(-q), bit for bit.
CheckResult check_reflection(std::size_t samples, std::uint64_t seed);
/// Diagonal breakdown equals the single-jump kernels, bit for bit.
CheckResult check_diagonal_sum(std::size_t samples, std::uint64_t seed);
/// classical_drift(i, j) = (Phi_j - Phi_i) / 2, relative.
CheckResult check_drift_identity(std::size_t trains, std::uint64_t seed);

// Spectrum structure on grid scans.
CheckResult check_single_pulse_peaks();
CheckResult check_samesign_peaks();
CheckResult check_sign_law();
CheckResult check_enhanced_third_peak();

// Integrated probabilities.
/// Adaptive total against a dense midpoint sum over (u, x, rho) of the
/// Schwinger representation, on random trains with N <= 4, |da| <= 8 and
/// half-spacing <= 2.
CheckResult check_quadrature_reference(std::size_t configs, std::uint64_t seed);
/// Single pulse: P(0.02) / P(0.01) = 4.
CheckResult check_weak_field_scaling();

struct ValidationOptions {
    std::size_t samples = 10'000;
    std::uint64_t seed = 1;
    std::size_t quadrature_configs = 3;
};

/// Everything above, in a fixed order.
std::vector<CheckResult> run_validation_suite(const ValidationOptions &options);

} // namespace deltapair
