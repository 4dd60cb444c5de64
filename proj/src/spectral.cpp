#include "deltapair/spectral.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace deltapair {

namespace {

constexpr double kInvFourPiSq = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

struct Scratch {
    std::vector<double> g;
    std::vector<double> lambda;
    std::vector<ExtendedPhase> phase;
};

Scratch &scratch() {
    thread_local Scratch s;
    return s;
}

} // namespace

double density_prefactor(double u, double alpha) {
    require_lightfront_fraction(u);
    return alpha * kInvFourPiSq * (1.0 - u) / u;
}

double f_kernel(double lambda_out, double lambda_in, double dxi2, double u) {
    if (!(lambda_out > 0.0 && lambda_in > 0.0)) {
        throw std::domain_error("f_kernel needs positive lightfront invariants");
    }
    if (!(dxi2 >= 0.0)) {
        throw std::domain_error("f_kernel needs a non-negative |da|^2");
    }
    const double h = h_factor(u);
    return 1.0 / (lambda_out * lambda_out) + 1.0 / (lambda_in * lambda_in) -
           2.0 / (lambda_out * lambda_in) * (1.0 + dxi2 * h);
}

double DensityResult::diagonal_sum() const noexcept {
    double s = 0.0;
    for (double d : diagonal) s += d;
    return s;
}

SpectralModel::SpectralModel(PulseTrain train, PhotonProbe probe, double alpha)
    : train_(std::move(train)), probe_(probe), alpha_(alpha) {
    probe_.validate();
    if (!(std::isfinite(alpha_) && alpha_ > 0.0)) {
        throw std::invalid_argument("alpha must be positive and finite");
    }
    const auto &a = train_.potentials();
    const std::size_t n = a.size();
    gap2_.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
            gap2_[k * n + m] = norm2(a[k] - a[m]);
        }
    }
}

double SpectralModel::scaled_density(double u, Vec2 qperp) const {
    const std::size_t n_jumps = train_.size();
    if (n_jumps == 0) {
        require_lightfront_fraction(u);
        return 0.0;
    }
    const SpectrumPoint point(u, qperp);
    const auto &a = train_.potentials();
    const auto &jumps = train_.jumps();
    const std::size_t n_seg = n_jumps + 1;

    Scratch &s = scratch();
    s.g.resize(n_seg);
    s.lambda.resize(n_seg);
    const Vec2 a_final = a.back();
    for (std::size_t k = 0; k < n_seg; ++k) {
        const Vec2 p = (k + 1 == n_seg) ? qperp : qperp - (a_final - a[k]);
        const Vec2 rel = p - u * probe_.lperp;
        const double r = 1.0 + norm2(rel);
        s.g[k] = 2.0 / r;
        s.lambda[k] = r / (2.0 * u);
    }

    const double w0 = u * (1.0 - u);
    const double sh = scaled_h_factor(u);
    auto weight = [&](std::size_t k, std::size_t m) { return w0 + sh * potential_gap2(k, m); };

    // Telescoped sum of all blocks at zero phase: the net jump a_N - a_0.
    const double g_last = s.g[n_seg - 1];
    const double g_first = s.g[0];
    double total = w0 * (g_last * g_last + g_first * g_first) -
                   2.0 * g_last * g_first * weight(n_seg - 1, 0);

    if (n_jumps > 1) {
        s.phase.resize(n_jumps);
        s.phase[0] = ExtendedPhase(0.0);
        const double one_minus_u = 1.0 - u;
        for (std::size_t k = 1; k < n_jumps; ++k) {
            const double gap = jumps[k].x - jumps[k - 1].x;
            s.phase[k] = s.phase[k - 1] +
                         ExtendedPhase::product(gap, s.lambda[k]).divided_by(one_minus_u);
        }
        double correction = 0.0;
        for (std::size_t i = 0; i < n_jumps; ++i) {
            // legs of jump i: OUT segment i+1 (+), IN segment i (-)
            for (std::size_t j = i + 1; j < n_jumps; ++j) {
                const double c = s.g[i + 1] * s.g[j + 1] * weight(i + 1, j + 1) -
                                 s.g[i + 1] * s.g[j] * weight(i + 1, j) -
                                 s.g[i] * s.g[j + 1] * weight(i, j + 1) +
                                 s.g[i] * s.g[j] * weight(i, j);
                correction += (s.phase[j] - s.phase[i]).sin_half_squared() * c;
            }
        }
        total -= 4.0 * correction;
    }
    return total;
}

double SpectralModel::scaled_density_diagonal(double u, Vec2 qperp) const {
    require_lightfront_fraction(u);
    const auto &a = train_.potentials();
    const Vec2 a_final = a.back();
    const double w0 = u * (1.0 - u);
    const double sh = scaled_h_factor(u);
    auto g = [&](std::size_t k) {
        const Vec2 p = (k + 1 == a.size()) ? qperp : qperp - (a_final - a[k]);
        return 2.0 / (1.0 + norm2(p - u * probe_.lperp));
    };
    double total = 0.0;
    double g_in = g(0);
    for (std::size_t j = 0; j < train_.size(); ++j) {
        const double g_out = g(j + 1);
        total += w0 * (g_out * g_out + g_in * g_in) -
                 2.0 * g_out * g_in * (w0 + sh * potential_gap2(j + 1, j));
        g_in = g_out;
    }
    return total;
}

double SpectralModel::density(double u, Vec2 qperp) const {
    return alpha_ * kInvFourPiSq * scaled_density(u, qperp);
}

DensityResult SpectralModel::evaluate(const SpectrumPoint &point, bool breakdown) const {
    DensityResult r;
    const double u = point.u();
    r.prefactor = density_prefactor(u, alpha_);
    const double scaled = scaled_density(u, point.qperp());
    r.value = alpha_ * kInvFourPiSq * scaled;
    r.f_total = scaled * (u / (1.0 - u));

    const std::size_t n_jumps = train_.size();
    if (n_jumps == 0) {
        return r;
    }
    const SegmentMomentumTable table = segment_momenta(train_, probe_, point);
    const double h = h_factor(u);
    for (std::size_t j = 0; j < n_jumps; ++j) {
        const double lo = table.lambda[j + 1];
        const double li = table.lambda[j];
        r.magnitude += 1.0 / (lo * lo) + 1.0 / (li * li) +
                       2.0 * std::abs(1.0 + h * potential_gap2(j + 1, j)) / (lo * li);
    }
    if (!breakdown) {
        return r;
    }

    r.diagonal.reserve(n_jumps);
    for (std::size_t j = 0; j < n_jumps; ++j) {
        r.diagonal.push_back(f_kernel(table.lambda[j + 1], table.lambda[j], potential_gap2(j + 1, j), u));
    }
    const auto phases = accumulated_phases_extended(train_, table, point);
    const auto &lam = table.lambda;
    auto term = [&](std::size_t k, std::size_t m) {
        return (1.0 + h * potential_gap2(k, m)) / (lam[k] * lam[m]);
    };
    for (std::size_t i = 0; i < n_jumps; ++i) {
        for (std::size_t j = i + 1; j < n_jumps; ++j) {
            const double c = term(i + 1, j + 1) - term(i + 1, j) - term(i, j + 1) + term(i, j);
            const ExtendedPhase dphi = phases[j] - phases[i];
            r.cross.push_back({i, j, dphi.value(), 2.0 * dphi.cos() * c});
        }
    }
    return r;
}

DensityResult master_density(const PulseTrain &train, const PhotonProbe &probe,
                             const SpectrumPoint &point, double alpha) {
    return SpectralModel(train, probe, alpha).evaluate(point);
}

// --- Closed forms --------------------------------------------------------

ExtendedPhase interference_angle(double theta, double lambda, double u) {
    require_lightfront_fraction(u);
    return ExtendedPhase::product(theta, lambda).divided_by(1.0 - u);
}

double density_single(Vec2 xi_vec, const PhotonProbe &probe, const SpectrumPoint &point,
                      double alpha) {
    const double u = point.u();
    const Vec2 q = point.qperp();
    const double l_q = lf_dot(probe, u, q);
    const double l_bar = lf_dot(probe, u, q - xi_vec);
    const double h = h_factor(u);
    const double f = 1.0 / (l_q * l_q) + 1.0 / (l_bar * l_bar) -
                     2.0 / (l_q * l_bar) * (1.0 + norm2(xi_vec) * h);
    return density_prefactor(u, alpha) * f;
}

double density_opposite(double xi, double theta, const PhotonProbe &probe,
                        const SpectrumPoint &point, double alpha) {
    const Vec2 a{xi, 0.0};
    const double l_bar = lf_dot(probe, point.u(), point.qperp() - a);
    const double s = interference_angle(theta, l_bar, point.u()).sin();
    return 4.0 * s * s * density_single(a, probe, point, alpha);
}

double density_samesign(double xi, double theta, const PhotonProbe &probe,
                        const SpectrumPoint &point, double alpha) {
    const double u = point.u();
    const Vec2 q = point.qperp();
    const Vec2 full{xi, 0.0};
    const Vec2 half{0.5 * xi, 0.0};
    const double l_q = lf_dot(probe, u, q);
    const double l_bar = lf_dot(probe, u, q - full);
    const double l_hat = lf_dot(probe, u, q - half);
    const double xi2 = xi * xi;

    const double s = interference_angle(theta, l_hat, u).sin();
    const double f_one = f_kernel(l_q, l_bar, xi2, u);
    const double added = 2.0 * s * s *
                         (f_kernel(l_q, l_hat, 0.25 * xi2, u) + f_kernel(l_bar, l_hat, 0.25 * xi2, u) - f_one);
    return density_prefactor(u, alpha) * (f_one + added);
}

double fourpulse_factor(double big_theta, double big_theta0) {
    const double s = std::sin(big_theta);
    const double c = std::cos(big_theta + big_theta0);
    return 16.0 * s * s * c * c;
}

double fourpulse_factor(ExtendedPhase big_theta, ExtendedPhase big_theta0) {
    const double s = big_theta.sin();
    const double c = (big_theta + big_theta0).cos();
    return 16.0 * s * s * c * c;
}

double density_fourpulse(double xi, double theta, const PhotonProbe &probe,
                         const SpectrumPoint &point, double alpha) {
    const double u = point.u();
    const Vec2 a{xi, 0.0};
    const double l_bar = lf_dot(probe, u, point.qperp() - a);
    const double l_q = lf_dot(probe, u, point.qperp());
    const double factor =
        fourpulse_factor(interference_angle(theta, l_bar, u), interference_angle(theta, l_q, u));
    return factor * density_single(a, probe, point, alpha);
}

// --- Reference trains ----------------------------------------------------

PulseTrain opposite_sign_train(double xi, double theta) {
    const std::array<Jump, 2> j{{{-theta, {-xi, 0.0}}, {theta, {xi, 0.0}}}};
    return PulseTrain::normalize(j);
}

PulseTrain same_sign_train(double xi, double theta) {
    const std::array<Jump, 2> j{{{-theta, {0.5 * xi, 0.0}}, {theta, {0.5 * xi, 0.0}}}};
    return PulseTrain::normalize(j);
}

PulseTrain alternating_four_train(double xi, double theta) {
    const std::array<Jump, 4> j{{{-3.0 * theta, {-xi, 0.0}},
                                 {-theta, {xi, 0.0}},
                                 {theta, {-xi, 0.0}},
                                 {3.0 * theta, {xi, 0.0}}}};
    return PulseTrain::normalize(j);
}

PulseTrain single_pulse_train(Vec2 xi_vec, double x) {
    const std::array<Jump, 1> j{{{x, xi_vec}}};
    return PulseTrain::normalize(j);
}

} // namespace deltapair
