#pragma once

// Interference phases reach 1e7 rad and more at large |q_perp| or near the
// u endpoints. They are carried as unevaluated double-double sums so that
// phase differences and their trig functions stay accurate to double
// precision after reduction modulo 2 pi.

#include <cmath>

namespace deltapair {

class ExtendedPhase {
public:
    constexpr ExtendedPhase() = default;
    constexpr explicit ExtendedPhase(double v) : hi_(v), lo_(0.0) {}

    /// Exact product a*b.
    static ExtendedPhase product(double a, double b) noexcept {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    ExtendedPhase divided_by(double d) const noexcept {
        const double q1 = hi_ / d;
        const double r = std::fma(-q1, d, hi_) + lo_;
        return normalized(q1, r / d);
    }

    ExtendedPhase half() const noexcept { return {0.5 * hi_, 0.5 * lo_}; }

    friend ExtendedPhase operator+(ExtendedPhase a, ExtendedPhase b) noexcept {
        const double s = a.hi_ + b.hi_;
        const double bb = s - a.hi_;
        const double err = (a.hi_ - (s - bb)) + (b.hi_ - bb);
        return normalized(s, err + a.lo_ + b.lo_);
    }
    friend ExtendedPhase operator-(ExtendedPhase a) noexcept { return {-a.hi_, -a.lo_}; }
    friend ExtendedPhase operator-(ExtendedPhase a, ExtendedPhase b) noexcept { return a + (-b); }

    double value() const noexcept { return hi_ + lo_; }

    /// Representative in [-pi, pi].
    double reduced() const noexcept {
        constexpr double two_pi_hi = 6.283185307179586;
        constexpr double two_pi_lo = 2.4492935982947064e-16;
        const double k = std::nearbyint(hi_ / two_pi_hi);
        if (k == 0.0) {
            return value();
        }
        const ExtendedPhase r = *this - product(k, two_pi_hi) - ExtendedPhase(k * two_pi_lo);
        return r.value();
    }

    double sin() const noexcept { return std::sin(reduced()); }
    double cos() const noexcept { return std::cos(reduced()); }

    /// sin^2(phase/2), free of the cancellation in (1 - cos)/2.
    double sin_half_squared() const noexcept {
        const double s = half().sin();
        return s * s;
    }

private:
    constexpr ExtendedPhase(double hi, double lo) : hi_(hi), lo_(lo) {}

    static ExtendedPhase normalized(double a, double b) noexcept {
        const double s = a + b;
        return {s, b - (s - a)};
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

} // namespace deltapair
