#include "deltapair/kinematics.hpp"

#include <stdexcept>
#include <string>

namespace deltapair {

void PhotonProbe::validate() const {
    if (!is_finite(lperp)) {
        throw std::invalid_argument("photon lperp must be finite");
    }
    if (energy_mev && !(std::isfinite(*energy_mev) && *energy_mev > 0.0)) {
        throw std::invalid_argument("photon energy_mev must be positive and finite");
    }
}

void require_lightfront_fraction(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("lightfront fraction u must lie in (0,1), got " + std::to_string(u));
    }
}

SpectrumPoint::SpectrumPoint(double u, Vec2 qperp) : u_(u), qperp_(qperp) {
    require_lightfront_fraction(u);
    if (!is_finite(qperp)) {
        throw std::domain_error("qperp must be finite");
    }
}

double lf_dot(const PhotonProbe &probe, double u, Vec2 pperp) {
    require_lightfront_fraction(u);
    const Vec2 rel = pperp - u * probe.lperp;
    return (1.0 + norm2(rel)) / (2.0 * u);
}

double scaled_inverse_lf_dot(const PhotonProbe &probe, double u, Vec2 pperp) {
    require_lightfront_fraction(u);
    const Vec2 rel = pperp - u * probe.lperp;
    return 2.0 / (1.0 + norm2(rel));
}

double h_factor(double u) {
    require_lightfront_fraction(u);
    // u(1-u) commutes under u -> 1-u, so h is exactly symmetric whenever
    // 1-u is representable; it underflows only far below the supported range.
    return 0.5 - 0.25 / (u * (1.0 - u));
}

double scaled_h_factor(double u) noexcept { return 0.5 * u * (1.0 - u) - 0.25; }

double minkowski_dot(const FourVector &a, const FourVector &b) noexcept {
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z;
}

FourVector from_lightfront(double minus, double plus, Vec2 perp) noexcept {
    return {0.5 * (plus + minus), perp.x, perp.y, 0.5 * (minus - plus)};
}

FourVector photon_momentum(const PhotonProbe &probe, double photon_minus) {
    if (!(photon_minus > 0.0)) {
        throw std::domain_error("photon n.l must be positive");
    }
    return from_lightfront(photon_minus, norm2(probe.lperp) / photon_minus, probe.lperp);
}

FourVector onshell_momentum(double u, Vec2 pperp, double photon_minus) {
    require_lightfront_fraction(u);
    if (!(photon_minus > 0.0)) {
        throw std::domain_error("photon n.l must be positive");
    }
    const double minus = u * photon_minus;
    return from_lightfront(minus, (1.0 + norm2(pperp)) / minus, pperp);
}

} // namespace deltapair
