// Acceptance suite: one PASS/FAIL line per criterion. Tolerances live in
// the checks themselves (src/validation.cpp).

#include "deltapair/validation.hpp"

#include <cstdio>
#include <string>
#include <vector>

using namespace deltapair;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr std::size_t kSamples = 10'000;
constexpr std::size_t kTrains = 1'000;
constexpr std::size_t kQuadratureConfigs = 20;

int failures = 0;

void report(const std::string &criterion, const std::vector<CheckResult> &parts) {
    bool ok = true;
    for (const auto &p : parts) {
        ok = ok && p.passed;
    }
    failures += ok ? 0 : 1;
    std::printf("%s  %s\n", ok ? "PASS" : "FAIL", criterion.c_str());
    for (const auto &p : parts) {
        std::printf("      %-40s metric %.3e  tol %.1e  n=%zu  %.2fs  %s\n", p.name.c_str(), p.metric,
                    p.tolerance, p.samples, p.seconds, p.detail.c_str());
    }
    std::fflush(stdout);
}

} // namespace

int main() {
    report("opposite-sign pair equals 4 sin^2(Theta) x single pulse",
           {check_opposite_reduction(kSamples, kSeed)});
    report("same-sign pair equals its closed form", {check_samesign_reduction(kSamples, kSeed + 1)});
    report("alternating four-pulse train equals 16 sin^2 Theta cos^2(Theta+Theta0) x single pulse",
           {check_fourpulse_reduction(kSamples, kSeed + 2)});
    report("four-pulse weak-field limit and trig identity",
           {check_weak_field_limit(kSamples, kSeed + 3), check_trig_identity(kSamples, kSeed + 4)});
    report("single pulse xi=5: two maxima at 0 and a_perp", {check_single_pulse_peaks()});
    report("same-sign xi=12: fringe contrast high in the middle, mild outside", {check_samesign_peaks()});
    report("negating both pulses moves the accelerated peak to -a_perp", {check_sign_law()});
    report("-xi/2 then +xi: coherent third peak at a_perp", {check_enhanced_third_peak()});
    report("classical drift equals half the phase difference", {check_drift_identity(kTrains, kSeed + 5)});
    report("total probability: dense reference, weak-field scaling, runtime",
           {check_quadrature_reference(kQuadratureConfigs, kSeed + 6), check_weak_field_scaling()});
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
