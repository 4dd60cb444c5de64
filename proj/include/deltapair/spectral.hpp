#pragma once

// Positron spectral density d^3P / (du d^2 q_perp) for arbitrary trains of
// delta pulses, plus the closed forms for the one-, two- and four-pulse
// configurations, which are implemented independently and serve as oracles.
//
// N-jump master formula. Every jump j carries two legs,
//   OUT: segment j   (momentum pi_j,     potential a_j,     sign +1)
//   IN:  segment j-1 (momentum pi_{j-1}, potential a_{j-1}, sign -1)
// and the bare density is
//   f = sum_{i,j} cos(Phi_i - Phi_j)
//         sum_{L in i, M in j} s_L s_M (1 + h(u) |a_L - a_M|^2) / (lambda_L lambda_M).
// The i = j terms reduce to the single-jump kernel; for N >= 3 with
// arbitrary amplitudes the formula is a model prediction.

#include "deltapair/kinematics.hpp"
#include "deltapair/pulse_train.hpp"

#include <cstddef>
#include <numbers>
#include <vector>

namespace deltapair {

inline constexpr double kDefaultAlpha = 7.2973525693e-3;

/// alpha (1-u) / (4 pi^2 u): converts a bare density into d^3P/(du d^2q).
double density_prefactor(double u, double alpha = kDefaultAlpha);

/// Single-jump kernel
///   F = 1/lo^2 + 1/li^2 - 2 (1 + dxi2 h(u)) / (lo li).
double f_kernel(double lambda_out, double lambda_in, double dxi2, double u);

struct CrossTerm {
    std::size_t i = 0;  ///< earlier jump (0-based)
    std::size_t j = 0;  ///< later jump
    double phase_difference = 0.0;
    double value = 0.0;  ///< 2 cos(Phi_j - Phi_i) C_ij, bare units
};

struct DensityResult {
    double value = 0.0;      ///< with prefactor
    double f_total = 0.0;    ///< bare
    double prefactor = 0.0;
    std::vector<double> diagonal;  ///< bare, one per jump
    std::vector<CrossTerm> cross;  ///< bare, one per pair i < j
    /// Sum of |leg terms| over the diagonal blocks, bare. Scale for
    /// round-off statements about f_total.
    double magnitude = 0.0;

    double diagonal_sum() const noexcept;
};

/// Train-bound evaluator of the master formula. Construction precomputes the
/// potential-difference table; evaluation is reentrant.
class SpectralModel {
public:
    SpectralModel(PulseTrain train, PhotonProbe probe, double alpha = kDefaultAlpha);

    const PulseTrain &train() const noexcept { return train_; }
    const PhotonProbe &probe() const noexcept { return probe_; }
    double alpha() const noexcept { return alpha_; }

    /// Full result, optionally with the per-jump / per-pair breakdown.
    DensityResult evaluate(const SpectrumPoint &point, bool breakdown = true) const;

    /// (1-u)/u * f_total, evaluated in the regrouped form that stays finite
    /// for u -> 0 and u -> 1. Multiply by alpha/(4 pi^2) for the density.
    double scaled_density(double u, Vec2 qperp) const;

    /// The i = j blocks of scaled_density only: the fringe-averaged
    /// (incoherent) spectrum.
    double scaled_density_diagonal(double u, Vec2 qperp) const;

    /// d^3P/(du d^2q) at (u, qperp); no breakdown, no allocation beyond
    /// thread-local scratch.
    double density(double u, Vec2 qperp) const;

    /// |a_k - a_m|^2 for segments k, m.
    double potential_gap2(std::size_t k, std::size_t m) const noexcept {
        return gap2_[k * (train_.size() + 1) + m];
    }

private:
    PulseTrain train_;
    PhotonProbe probe_;
    double alpha_;
    std::vector<double> gap2_;
};

DensityResult master_density(const PulseTrain &train, const PhotonProbe &probe,
                             const SpectrumPoint &point, double alpha = kDefaultAlpha);

// --- Closed forms --------------------------------------------------------

/// Single pulse with transverse work xi_vec (linear polarisation: (xi, 0)).
double density_single(Vec2 xi_vec, const PhotonProbe &probe, const SpectrumPoint &point,
                      double alpha = kDefaultAlpha);

/// Two pulses of opposite sign, -xi at x = -theta then +xi at x = +theta:
/// 4 sin^2(Theta) times the single-pulse density, Theta = theta lambda(pi_bar)/(1-u).
double density_opposite(double xi, double theta, const PhotonProbe &probe,
                        const SpectrumPoint &point, double alpha = kDefaultAlpha);

/// Two pulses of the same sign, xi/2 at x = -theta and at x = +theta. The
/// interference angle uses the between-pulse momentum pi_hat = q - (xi/2, 0).
double density_samesign(double xi, double theta, const PhotonProbe &probe,
                        const SpectrumPoint &point, double alpha = kDefaultAlpha);

/// 16 sin^2(Theta) cos^2(Theta + Theta0).
double fourpulse_factor(double big_theta, double big_theta0);
double fourpulse_factor(ExtendedPhase big_theta, ExtendedPhase big_theta0);

/// Alternating (- + - +) train at x = -3theta, -theta, theta, 3theta.
double density_fourpulse(double xi, double theta, const PhotonProbe &probe,
                         const SpectrumPoint &point, double alpha = kDefaultAlpha);

/// theta lambda / (1-u) in extended precision.
ExtendedPhase interference_angle(double theta, double lambda, double u);

// --- Reference trains ----------------------------------------------------

PulseTrain opposite_sign_train(double xi, double theta);
PulseTrain same_sign_train(double xi, double theta);
PulseTrain alternating_four_train(double xi, double theta);
PulseTrain single_pulse_train(Vec2 xi_vec, double x = 0.0);

} // namespace deltapair
