#pragma once

#include "deltapair/kinematics.hpp"
#include "deltapair/phase.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace deltapair {

/// One delta pulse: a step of the transverse potential by `da` (units of m)
/// at dimensionless lightfront position x = phi m^2 / (n.l). A single
/// linearly polarised pulse of intensity xi is da = (xi, 0).
struct Jump {
    double x = 0.0;
    Vec2 da{};

    friend bool operator==(const Jump &, const Jump &) = default;
};

/// Ordered train of delta pulses with the derived piecewise-constant
/// potential a_0 = 0, a_k = a_{k-1} + da_k. Immutable once built.
class PulseTrain {
public:
    PulseTrain() = default;

    /// Sorts by position, merges coincident jumps by summing da and drops
    /// jumps whose net da vanishes. Throws std::invalid_argument on
    /// non-finite input.
    static PulseTrain normalize(std::span<const Jump> raw);

    std::size_t size() const noexcept { return jumps_.size(); }
    bool empty() const noexcept { return jumps_.empty(); }
    const std::vector<Jump> &jumps() const noexcept { return jumps_; }
    /// a_0 .. a_N.
    const std::vector<Vec2> &potentials() const noexcept { return potentials_; }
    /// Largest |a_k| over all segments.
    double max_potential() const noexcept;

    /// Bookkeeping from normalization, echoed into run metadata.
    std::size_t input_count() const noexcept { return input_count_; }
    std::size_t merged_count() const noexcept { return merged_count_; }
    std::size_t dropped_count() const noexcept { return dropped_count_; }

    /// Copy with every position shifted by `offset`.
    PulseTrain shifted(double offset) const;
    /// Copy with every da negated.
    PulseTrain negated() const;

private:
    std::vector<Jump> jumps_;
    std::vector<Vec2> potentials_{Vec2{}};
    std::size_t input_count_ = 0;
    std::size_t merged_count_ = 0;
    std::size_t dropped_count_ = 0;
};

/// Classical positron momenta in each potential segment, and their
/// lightfront products with the photon. Segment k lies between jumps k and
/// k+1 (segment 0 precedes the first jump, segment N follows the last).
struct SegmentMomentumTable {
    std::vector<Vec2> pperp;     ///< q_perp - (a_N - a_k)
    std::vector<double> lambda;  ///< l.pi_k / m^2
};

SegmentMomentumTable segment_momenta(const PulseTrain &train, const PhotonProbe &probe,
                                     const SpectrumPoint &point);

/// Phi_1 .. Phi_N with Phi_1 = 0 and
/// Phi_{j+1} - Phi_j = (x_{j+1} - x_j) lambda_j / (1-u).
std::vector<double> accumulated_phases(const PulseTrain &train, const SegmentMomentumTable &table,
                                       const SpectrumPoint &point);

/// Same phases in extended precision; used wherever phase differences feed
/// trig functions.
std::vector<ExtendedPhase> accumulated_phases_extended(const PulseTrain &train,
                                                       const SegmentMomentumTable &table,
                                                       const SpectrumPoint &point);

/// Half the interference phase between jumps i < j (0-based), computed from
/// the explicit displacement of a classical positron,
///   delta x^mu = integral dphi pi^mu / n.q,
/// as u/(2(1-u)) l.delta x with full 4-vectors. Agrees with
/// (Phi_j - Phi_i)/2 and is independent of the photon scale n.l.
double classical_drift(const PulseTrain &train, const SegmentMomentumTable &table,
                       const PhotonProbe &probe, const SpectrumPoint &point, std::size_t i,
                       std::size_t j, double photon_minus = 1.0);

} // namespace deltapair
