#pragma once

// Integrated spectra: dP/du (transverse integral), dP/d^2q (lightfront
// integral), the total probability and rectangular grid scans.

#include "deltapair/integrate.hpp"
#include "deltapair/spectral.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace deltapair {

enum class TransverseMethod {
    /// Whole-plane transverse integral through a Gaussian parameter
    /// representation of each leg product; handles the interference fringes
    /// at any u.
    analytic,
    /// Direct cubature over the disc |q| <= q_max plus an envelope bound on
    /// the remainder. Fringe-limited close to the u endpoints.
    cutoff,
};

struct IntegrationSpec {
    double rel_tol = 1e-8;
    /// Transverse cutoff in units of m; default 8 (1 + max_k |a_k|).
    std::optional<double> q_max{};
    double u_margin = 1e-9;
    std::size_t max_evals = 20'000'000;
    TransverseMethod transverse = TransverseMethod::analytic;

    /// Throws std::invalid_argument when a field is out of range for `train`.
    void validate(const PulseTrain &train) const;
    double cutoff_for(const PulseTrain &train) const;

    friend bool operator==(const IntegrationSpec &, const IntegrationSpec &) = default;
};

struct IntegralEstimate {
    double value = 0.0;
    /// Quadrature error plus tail_bound.
    double error = 0.0;
    /// Bound on the contribution beyond the integration cutoff.
    double tail_bound = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

/// dP/du over the disc |q_perp| <= q_max; the remainder is bounded by
/// replacing every interference cosine with +-1.
IntegralEstimate integrate_qperp(const SpectralModel &model, double u, const IntegrationSpec &spec);

/// dP/du over the whole transverse plane (analytic route).
IntegralEstimate integrate_qperp_plane(const SpectralModel &model, double u,
                                       const IntegrationSpec &spec);

/// Bound on |dP/du| contributed by |q_perp| > q_max.
double transverse_tail_bound(const SpectralModel &model, double u, double q_max);

/// dP/d^2q at fixed q_perp, integrated over 0 < u < 1.
IntegralEstimate integrate_u(const SpectralModel &model, Vec2 qperp, const IntegrationSpec &spec);

/// Total pair creation probability.
IntegralEstimate total_probability(const SpectralModel &model, const IntegrationSpec &spec);

struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    std::size_t n = 1;

    /// Inclusive endpoints; a single point sits at min.
    double at(std::size_t i) const noexcept {
        return n <= 1 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
};

struct GridScan {
    GridAxis q1;
    GridAxis q2;
    double u = 0.5;
    /// Row-major: cell (i, j) at i * q2.n + j, q1 index i, q2 index j.
    std::vector<DensityResult> cells;

    const DensityResult &at(std::size_t i, std::size_t j) const { return cells[i * q2.n + j]; }
};

/// Densities on a q1 x q2 grid at fixed u. Cells are independent, so the
/// result does not depend on `threads`.
GridScan grid_scan(const SpectralModel &model, double u, GridAxis q1, GridAxis q2,
                   bool breakdown = false, unsigned threads = 1);

} // namespace deltapair
