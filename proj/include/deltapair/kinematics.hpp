#pragma once

// Lightfront kinematics for a probe photon colliding with a plane wave that
// travels in -z, so fields depend on t + z. Metric (+,-,-,-); for any vector v
// the lightfront components are v^- = n.v = v^0 + v^3 and v^+ = v^0 - v^3, so that
//   v.w = (v^+ w^- + v^- w^+)/2 - v_perp.w_perp.
// All momenta are in units of the electron mass.

#include <cmath>
#include <optional>

namespace deltapair {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 &operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
    constexpr Vec2 &operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) noexcept = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) noexcept { return dot(a, a); }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }
inline bool is_finite(Vec2 a) noexcept { return std::isfinite(a.x) && std::isfinite(a.y); }

/// The probe photon. Only the transverse momentum enters the dimensionless
/// invariants; the photon energy is carried for unit conversion of pulse
/// separations and never affects a density.
struct PhotonProbe {
    Vec2 lperp{};
    std::optional<double> energy_mev{};

    /// Throws std::invalid_argument on non-finite lperp or non-positive energy.
    void validate() const;

    friend bool operator==(const PhotonProbe &, const PhotonProbe &) = default;
};

/// Positron lightfront fraction u = n.q/n.l in (0,1) and final transverse
/// momentum q_perp.
class SpectrumPoint {
public:
    /// Throws std::domain_error unless 0 < u < 1 and qperp is finite.
    SpectrumPoint(double u, Vec2 qperp);

    double u() const noexcept { return u_; }
    Vec2 qperp() const noexcept { return qperp_; }

private:
    double u_;
    Vec2 qperp_;
};

/// Throws std::domain_error unless 0 < u < 1.
void require_lightfront_fraction(double u);

/// lambda = l.p / m^2 for an on-shell positron-like momentum p with
/// lightfront fraction u and transverse momentum pperp. Evaluated as
/// (1 + |pperp - u lperp|^2) / (2u), which is manifestly positive.
double lf_dot(const PhotonProbe &probe, double u, Vec2 pperp);

/// g = 1/(u lambda) = 2/(1 + |pperp - u lperp|^2). Finite as u -> 0.
double scaled_inverse_lf_dot(const PhotonProbe &probe, double u, Vec2 pperp);

/// h(u) = 1/2 - 1/(4u(1-u)); h <= -1/2 with equality at u = 1/2.
double h_factor(double u);

/// u(1-u) h(u) = u(1-u)/2 - 1/4, bounded on the closed interval.
double scaled_h_factor(double u) noexcept;

/// Minimal contravariant 4-vector in Cartesian components (t, x, y, z),
/// used for the explicit position-integral route and reference checks.
struct FourVector {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double minus() const noexcept { return t + z; }
    double plus() const noexcept { return t - z; }
    FourVector &operator+=(const FourVector &o) noexcept {
        t += o.t; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    friend FourVector operator*(double s, const FourVector &v) noexcept {
        return {s * v.t, s * v.x, s * v.y, s * v.z};
    }
};

double minkowski_dot(const FourVector &a, const FourVector &b) noexcept;

/// Builds a 4-vector from lightfront components (v^-, v^+, v_perp).
FourVector from_lightfront(double minus, double plus, Vec2 perp) noexcept;

/// Lightlike photon momentum with n.l = photon_minus.
FourVector photon_momentum(const PhotonProbe &probe, double photon_minus);

/// On-shell (p^2 = 1) momentum with n.p = u * photon_minus.
FourVector onshell_momentum(double u, Vec2 pperp, double photon_minus);

} // namespace deltapair
