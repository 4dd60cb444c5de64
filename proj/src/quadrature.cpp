#include "deltapair/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace deltapair {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvFourPiSq = 1.0 / (4.0 * kPi * kPi);

// Segment centres b_k = a_N - a_k + u l: g_k(q) = 2 / (1 + |q - b_k|^2).
std::vector<Vec2> segment_centres(const SpectralModel &model, double u) {
    const auto &a = model.train().potentials();
    std::vector<Vec2> b(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        b[k] = (a.back() - a[k]) + u * model.probe().lperp;
    }
    return b;
}

// Integral over x in [0, 1] of 1 / (1 + x (1 - x) d2).
double feynman_average(double d2) {
    if (d2 < 1e-4) {
        return 1.0 - d2 / 6.0 + d2 * d2 / 30.0;
    }
    const double d = std::sqrt(d2);
    const double s = std::sqrt(d2 + 4.0);
    return 4.0 / (d * s) * std::atanh(d / s);
}

// Legs of jump j: OUT segment j + 1 with sign +1, IN segment j with sign -1.
struct Leg {
    std::size_t segment;
    double sign;
};

std::array<Leg, 2> legs(std::size_t j) { return {{{j + 1, 1.0}, {j, -1.0}}}; }

double leg_weight(const SpectralModel &model, double u, std::size_t k, std::size_t m) {
    return u * (1.0 - u) + scaled_h_factor(u) * model.potential_gap2(k, m);
}

// Whole-plane transverse integral of the interference block of jumps i < j.
// With s = 1/(2u(1-u)) the phase difference is s sum_k dx_k (1 + |q - b_k|^2),
// a quadratic form in q with curvature kappa = s dx and stationary point
// q_c; its value there is s phase0, and every b_k - q_c is independent of u.
struct CrossPairGeometry {
    double dx = 0.0;
    double phase0 = 0.0;
    struct Term {
        std::size_t seg_l, seg_m;
        double sign;
        Vec2 e_l, e_m;  // b_L - q_c, b_M - q_c
        double d2;
    };
    std::array<Term, 4> terms{};
};

class CrossAmplitudes {
public:
    explicit CrossAmplitudes(const SpectralModel &model) : model_(model) {
        const PulseTrain &train = model.train();
        const std::size_t n = train.size();
        const auto &jumps = train.jumps();
        const auto b = segment_centres(model, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                CrossPairGeometry g;
                Vec2 weighted{};
                for (std::size_t k = i + 1; k <= j; ++k) {
                    const double w = jumps[k].x - jumps[k - 1].x;
                    g.dx += w;
                    weighted += w * b[k];
                }
                const Vec2 centre = (1.0 / g.dx) * weighted;
                for (std::size_t k = i + 1; k <= j; ++k) {
                    g.phase0 += (jumps[k].x - jumps[k - 1].x) * (1.0 + norm2(b[k] - centre));
                }
                std::size_t t = 0;
                for (Leg l : legs(i)) {
                    for (Leg m : legs(j)) {
                        g.terms[t++] = {l.segment, m.segment, l.sign * m.sign, b[l.segment] - centre,
                                        b[m.segment] - centre, model.potential_gap2(l.segment, m.segment)};
                    }
                }
                pairs_.push_back(g);
                d2_max_ = std::max({d2_max_, g.terms[0].d2, g.terms[1].d2, g.terms[2].d2, g.terms[3].d2});
            }
        }
    }

    std::size_t size() const noexcept { return pairs_.size(); }
    const CrossPairGeometry &pair(std::size_t p) const { return pairs_[p]; }
    double max_phase0() const noexcept {
        double m = 0.0;
        for (const auto &g : pairs_) m = std::max(m, g.phase0);
        return m;
    }

    struct Amplitude {
        std::complex<double> value;  // cross contribution is Re[exp(i s phase0) value]
        double error;
        std::size_t evaluations;
        bool converged;
    };

    // Both interference orders (i, j) and (j, i) are included; scaled units.
    Amplitude evaluate(std::size_t p, double u, double rel_tol, double abs_tol, std::size_t max_evals) const {
        const CrossPairGeometry &g = pairs_[p];
        const double kappa = g.dx / (2.0 * u * (1.0 - u));
        std::array<double, 4> coeff{};
        for (std::size_t t = 0; t < 4; ++t) {
            coeff[t] = 2.0 * g.terms[t].sign * leg_weight(model_, u, g.terms[t].seg_l, g.terms[t].seg_m);
        }
        const double k2 = kappa * kappa;
        // Schwinger parameters rho x, rho (1 - x) for g_L g_M; the Gaussian q
        // integral leaves a smooth integrand on (x, rho), with rho = t/(1-t).
        auto f = [&](const std::array<double, 2> &pt) {
            const double x = pt[0];
            const double one_minus_t = 1.0 - pt[1];
            const double rho = pt[1] / one_minus_t;
            const double jac = 1.0 / (one_minus_t * one_minus_t);
            const double xx = x * (1.0 - x);
            const double den = rho * rho + k2;
            const double amp = jac * rho / std::sqrt(den);
            const double base_phase = std::atan2(kappa, rho);
            const double damp_d = k2 * rho / den;
            const double phase_d = kappa * rho * rho / den;
            std::complex<double> sum{};
            for (std::size_t t = 0; t < 4; ++t) {
                const CrossPairGeometry::Term &term = g.terms[t];
                const double d = norm2(x * term.e_l + (1.0 - x) * term.e_m);
                const double mag = amp * std::exp(-rho * (1.0 + xx * term.d2) - damp_d * d);
                sum += coeff[t] * mag * std::polar(1.0, base_phase + phase_d * d);
            }
            return 4.0 * kPi * sum;
        };
        // Graded seed grid: boundary layers of width 1/(rho d^2) at x = 0
        // and 1, and the rho scales 1, 1/d^2 and kappa.
        double d2 = 0.0;
        for (const auto &term : g.terms) d2 = std::max(d2, term.d2);
        std::vector<double> x_cuts{0.0, 0.5, 1.0};
        for (double w = 0.25; w > 0.25 / (1.0 + d2); w *= 0.25) {
            x_cuts.push_back(w);
            x_cuts.push_back(1.0 - w);
        }
        std::vector<double> t_cuts{0.0, 1.0};
        for (double r : {0.125, 0.5, 2.0, 8.0, 1.0 / (1.0 + d2)}) t_cuts.push_back(r / (1.0 + r));
        for (double r : {0.25 * kappa, kappa, 4.0 * kappa}) {
            if (r < 1e2) t_cuts.push_back(r / (1.0 + r));
        }
        for (auto *cuts : {&x_cuts, &t_cuts}) {
            std::sort(cuts->begin(), cuts->end());
            cuts->erase(std::unique(cuts->begin(), cuts->end(),
                                    [](double a, double b) { return b - a < 1e-3 * (b + a); }),
                        cuts->end());
            cuts->back() = 1.0;
        }
        const Tolerance tol{rel_tol, abs_tol, max_evals};
        const auto r = integrate_grid<2>(f, {x_cuts, t_cuts}, tol);
        return {r.value, r.error, r.evaluations, r.converged};
    }

private:
    const SpectralModel &model_;
    std::vector<CrossPairGeometry> pairs_;
    double d2_max_ = 0.0;
};

// Diagonal blocks integrated over the plane in closed form, scaled units;
// `scale` receives the sum of |leg terms|.
double diagonal_plane(const SpectralModel &model, double u, double *scale = nullptr) {
    const double w0 = u * (1.0 - u);
    double diagonal = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < model.train().size(); ++j) {
        const double cross_leg =
            2.0 * leg_weight(model, u, j + 1, j) * 4.0 * kPi * feynman_average(model.potential_gap2(j + 1, j));
        diagonal += 2.0 * w0 * 4.0 * kPi - cross_leg;
        mag += 2.0 * w0 * 4.0 * kPi + std::abs(cross_leg);
    }
    if (scale) *scale = mag;
    return diagonal;
}

// exp(i phase0 s) reduced before the trig call.
std::complex<double> phase_factor(double phase0, double s) {
    const double hi = phase0 * s;
    const double lo = std::fma(phase0, s, -hi);
    return std::polar(1.0, std::remainder(hi, kTwoPi) + lo);
}

} // namespace

void IntegrationSpec::validate(const PulseTrain &train) const {
    if (!(std::isfinite(rel_tol) && rel_tol > 0.0)) {
        throw std::invalid_argument("rel_tol must be positive");
    }
    if (q_max && !(std::isfinite(*q_max) && *q_max > train.max_potential())) {
        throw std::invalid_argument("q_max must exceed the largest |a_k|");
    }
    if (!(u_margin > 0.0 && u_margin < 0.25)) {
        throw std::invalid_argument("u_margin must lie in (0, 0.25)");
    }
    if (max_evals == 0) {
        throw std::invalid_argument("max_evals must be positive");
    }
}

double IntegrationSpec::cutoff_for(const PulseTrain &train) const {
    return q_max.value_or(8.0 * (1.0 + train.max_potential()));
}

double transverse_tail_bound(const SpectralModel &model, double u, double q_max) {
    require_lightfront_fraction(u);
    const std::size_t n = model.train().size();
    if (n == 0) {
        return 0.0;
    }
    double c = 0.0;
    for (Vec2 b : segment_centres(model, u)) {
        c = std::max(c, norm(b));
    }
    const double rho0 = q_max - c;
    if (!(rho0 > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (Leg l : legs(i)) {
                for (Leg m : legs(j)) {
                    weight_sum += std::abs(leg_weight(model, u, l.segment, m.segment));
                }
            }
        }
    }
    // |g_L g_M| <= 4 / (1 + (r - c)^2)^2 beyond r = c; integrate r dr dphi.
    const double y = 1.0 / rho0;
    const double excess = y < 1e-3 ? (2.0 / 3.0) * y * y * y - 0.8 * std::pow(y, 5)
                                    : std::atan(y) - rho0 / (1.0 + rho0 * rho0);
    const double radial = 0.5 / (1.0 + rho0 * rho0) + 0.5 * c * std::max(0.0, excess);
    return model.alpha() * kInvFourPiSq * weight_sum * 4.0 * kTwoPi * radial;
}

IntegralEstimate integrate_qperp(const SpectralModel &model, double u, const IntegrationSpec &spec) {
    require_lightfront_fraction(u);
    spec.validate(model.train());
    IntegralEstimate out;
    if (model.train().empty()) {
        return out;
    }
    const double r_max = spec.cutoff_for(model.train());
    auto f = [&](const std::array<double, 2> &p) {
        const double r = p[0];
        return r * model.density(u, {r * std::cos(p[1]), r * std::sin(p[1])});
    };
    const Tolerance tol{spec.rel_tol, 0.0, spec.max_evals};
    const auto q = integrate_box<2>(f, {0.0, 0.0}, {r_max, kTwoPi}, tol);
    out.value = q.value;
    out.tail_bound = transverse_tail_bound(model, u, r_max);
    out.error = q.error + out.tail_bound;
    out.evaluations = q.evaluations;
    out.converged = q.converged;
    return out;
}

IntegralEstimate integrate_qperp_plane(const SpectralModel &model, double u,
                                       const IntegrationSpec &spec) {
    require_lightfront_fraction(u);
    spec.validate(model.train());
    IntegralEstimate out;
    const std::size_t n = model.train().size();
    if (n == 0) {
        return out;
    }
    const double pref = model.alpha() * kInvFourPiSq;
    double scale = 0.0;
    CompensatedSum value;
    value.add(diagonal_plane(model, u, &scale));
    if (n > 1) {
        const CrossAmplitudes cross(model);
        const double s = 1.0 / (2.0 * u * (1.0 - u));
        const double abs_tol = 0.5 * spec.rel_tol * scale / static_cast<double>(cross.size());
        double error = 0.0;
        for (std::size_t p = 0; p < cross.size(); ++p) {
            const auto a = cross.evaluate(p, u, 0.5 * spec.rel_tol, abs_tol, spec.max_evals);
            value.add((phase_factor(cross.pair(p).phase0, s) * a.value).real());
            error += a.error;
            out.evaluations += a.evaluations;
            out.converged = out.converged && a.converged;
        }
        out.error = pref * error;
    }
    out.value = pref * value.value();
    return out;
}

IntegralEstimate integrate_u(const SpectralModel &model, Vec2 qperp, const IntegrationSpec &spec) {
    spec.validate(model.train());
    if (!is_finite(qperp)) {
        throw std::invalid_argument("qperp must be finite");
    }
    IntegralEstimate out;
    const PulseTrain &train = model.train();
    const std::size_t n = train.size();
    if (n == 0) {
        return out;
    }
    const double pref = model.alpha() * kInvFourPiSq;
    const double um = spec.u_margin;
    auto diag = [&](double u) { return model.scaled_density_diagonal(u, qperp); };
    auto full = [&](double u) { return model.scaled_density(u, qperp); };

    std::size_t evals = 0;
    bool converged = true;
    double error = 0.0;
    CompensatedSum value;
    auto take = [&](const QuadratureResult &r) {
        value.add(r.value);
        error += r.error;
        evals += r.evaluations;
        converged = converged && r.converged;
    };

    // Inside u_margin the integrand is replaced by its endpoint values.
    const double end_lo = diag(um);
    const double end_hi = diag(1.0 - um);
    value.add(um * (end_lo + end_hi));
    evals += 2;

    const Tolerance coarse{spec.rel_tol, 0.0, spec.max_evals};
    const auto envelope = integrate_interval(diag, um, 1.0 - um, coarse);
    if (n == 1) {
        take(envelope);
        error += 1e-3 * um * (std::abs(end_lo) + std::abs(end_hi));
        out.value = pref * value.value();
        out.error = pref * error;
        out.evaluations = evals;
        out.converged = converged;
        return out;
    }
    evals += envelope.evaluations;

    // Cross terms oscillate like cos(K / u) near u = 0 (and in 1 - u); below
    // u_c their integral is bounded by 2 A u_c^2 / K and dropped.
    double min_gap = std::numeric_limits<double>::infinity();
    const auto &jumps = train.jumps();
    for (std::size_t k = 1; k < n; ++k) {
        min_gap = std::min(min_gap, jumps[k].x - jumps[k - 1].x);
    }
    const double big_k = 0.5 * min_gap;
    double big_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (Leg l : legs(i)) {
                for (Leg m : legs(j)) {
                    big_a += 2.0 * (1.0 + model.potential_gap2(l.segment, m.segment));
                }
            }
        }
    }
    const double budget = 0.1 * spec.rel_tol * std::abs(envelope.value);
    const double uc = std::clamp(std::sqrt(budget * big_k / (2.0 * big_a)), um, 0.25);
    const double dropped = 2.0 * (2.0 * big_a * uc * uc / big_k);
    error += dropped;

    const Tolerance tol{spec.rel_tol, 0.25 * spec.rel_tol * std::abs(envelope.value), spec.max_evals};
    if (uc > um) {
        take(integrate_interval(diag, um, uc, tol));
        take(integrate_interval(diag, 1.0 - uc, 1.0 - um, tol));
    }
    if (uc < 0.25) {
        // t = 1/u (resp. 1/(1-u)) turns cos(K/u) into a uniform oscillation.
        take(integrate_interval([&](double t) { return full(1.0 / t) / (t * t); }, 4.0, 1.0 / uc, tol));
        take(integrate_interval([&](double t) { return full(1.0 - 1.0 / t) / (t * t); }, 4.0, 1.0 / uc,
                                tol));
    }
    take(integrate_interval(full, 0.25, 0.75, tol));
    error += 1e-3 * um * (std::abs(end_lo) + std::abs(end_hi));

    out.value = pref * value.value();
    out.error = pref * error;
    out.tail_bound = pref * dropped;
    out.evaluations = evals;
    out.converged = converged;
    return out;
}

namespace {

IntegralEstimate total_cutoff(const SpectralModel &model, const IntegrationSpec &spec) {
    IntegralEstimate out;
    IntegrationSpec inner = spec;
    inner.rel_tol = 0.1 * spec.rel_tol;
    double inner_error = 0.0;
    auto marginal = [&](double u) {
        const IntegralEstimate r = integrate_qperp(model, u, inner);
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
        inner_error = std::max(inner_error, r.error - r.tail_bound);
        out.tail_bound = std::max(out.tail_bound, r.tail_bound);
        return r.value;
    };
    const double um = spec.u_margin;
    const double ends = um * (marginal(um) + marginal(1.0 - um));
    const Tolerance tol{spec.rel_tol, 0.0, spec.max_evals};
    CompensatedSum value;
    value.add(ends);
    double quad_error = 0.0;
    for (auto [a, b] : {std::pair{um, 0.5}, std::pair{0.5, 1.0 - um}}) {
        const auto r = integrate_interval(marginal, a, b, tol);
        value.add(r.value);
        quad_error += r.error;
        out.converged = out.converged && r.converged;
    }
    out.value = value.value();
    out.error = quad_error + inner_error + out.tail_bound + 1e-3 * std::abs(ends);
    return out;
}

// Interference part of the total. In s = 1/(2u(1-u)) each pair contributes
// Re int ds exp(i phase0 s) [K(u-) + K(u+)] |du/ds| with K smooth, so the s
// axis is cut into geometric panels and each panel is done by a Filon rule.
// Near s = 2 (u = 1/2) the substitution s = 2 + sigma^2 absorbs the square
// root in |du/ds| = 1 / (2 s^(3/2) sqrt(s - 2)).
struct CrossTotal {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

CrossTotal cross_total(const SpectralModel &model, const IntegrationSpec &spec, double target) {
    CrossTotal out;
    const CrossAmplitudes cross(model);
    const std::size_t n_pairs = cross.size();
    const FilonLegendre filon(16);
    const std::size_t n_nodes = filon.size();
    const double s_max = 1.0 / (2.0 * spec.u_margin * (1.0 - spec.u_margin));
    const double inner_rel = 0.1 * spec.rel_tol;

    // Per-pair values A_p at the panel nodes, and the summed inner error.
    std::vector<std::vector<std::complex<double>>> samples(n_pairs,
                                                           std::vector<std::complex<double>>(n_nodes));
    auto sample = [&](double s, double jacobian, std::size_t node, double abs_tol) {
        const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 / s));
        const double u_lo = 0.5 * (1.0 - root);
        const double u_hi = 0.5 * (1.0 + root);
        double err = 0.0;
        for (std::size_t p = 0; p < n_pairs; ++p) {
            std::complex<double> sum{};
            for (double u : {u_lo, u_hi}) {
                const auto a = cross.evaluate(p, u, inner_rel, abs_tol, spec.max_evals);
                sum += a.value;
                err += a.error * jacobian;
                out.evaluations += a.evaluations;
                out.converged = out.converged && a.converged;
            }
            samples[p][node] = jacobian * sum;
        }
        return err;
    };
    const double abs_inner = 0.1 * spec.rel_tol * target / static_cast<double>(n_pairs);

    // Panel [2, 2 + delta0] in sigma, with the phase kept inside the samples.
    const double delta0 = std::min(0.5, 1.0 / std::max(1.0, cross.max_phase0()));
    {
        const double half = 0.5 * std::sqrt(delta0);
        double inner_err = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            const double sigma = half * (1.0 + filon.nodes()[i]);
            const double s = 2.0 + sigma * sigma;
            inner_err += sample(s, 1.0 / (s * std::sqrt(s)), i, abs_inner);
            for (std::size_t p = 0; p < n_pairs; ++p) {
                samples[p][i] *= phase_factor(cross.pair(p).phase0, s);
            }
        }
        for (std::size_t p = 0; p < n_pairs; ++p) {
            const auto r = filon.integrate(samples[p], 0.0);
            out.value += half * r.value.real();
            out.error += half * r.error;
        }
        out.error += half * 2.0 * inner_err / static_cast<double>(n_nodes);
    }

    // Geometric panels in s - 2 up to s = 3, then in s.
    double a = 2.0 + delta0;
    while (a < s_max) {
        const double b = std::min(s_max, a < 3.0 ? std::min(3.0, 2.0 + 2.0 * (a - 2.0)) : 2.0 * a);
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double inner_err = 0.0;
        double last = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            const double s = mid + half * filon.nodes()[i];
            const double jac = 1.0 / (2.0 * s * std::sqrt(s) * std::sqrt(s - 2.0));
            inner_err += sample(s, jac, i, abs_inner);
        }
        for (std::size_t p = 0; p < n_pairs; ++p) {
            const double phase0 = cross.pair(p).phase0;
            const auto r = filon.integrate(samples[p], phase0 * half);
            out.value += half * (phase_factor(phase0, mid) * r.value).real();
            out.error += half * r.error;
            last += std::abs(samples[p][n_nodes - 1]);
        }
        out.error += half * 2.0 * inner_err / static_cast<double>(n_nodes);
        a = b;
        // The amplitude falls like s^-3 once s is large; remaining tail ~ A(b) b / 2.
        if (a >= 8.0 && last * a < 0.01 * spec.rel_tol * target) {
            out.error += last * a;
            return out;
        }
    }
    return out;
}

} // namespace

IntegralEstimate total_probability(const SpectralModel &model, const IntegrationSpec &spec) {
    spec.validate(model.train());
    IntegralEstimate out;
    const std::size_t n = model.train().size();
    if (n == 0) {
        return out;
    }
    if (spec.transverse == TransverseMethod::cutoff) {
        return total_cutoff(model, spec);
    }
    const double pref = model.alpha() * kInvFourPiSq;
    const double um = spec.u_margin;

    // Diagonal blocks: closed form in q, smooth in u.
    auto diag = [&](double u) { return diagonal_plane(model, u); };
    const double ends = um * (diag(um) + diag(1.0 - um));
    const Tolerance tol{0.1 * spec.rel_tol, 0.0, spec.max_evals};
    CompensatedSum value;
    value.add(ends);
    double error = 1e-3 * std::abs(ends);
    for (auto [a, b] : {std::pair{um, 0.5}, std::pair{0.5, 1.0 - um}}) {
        const auto r = integrate_interval(diag, a, b, tol);
        value.add(r.value);
        error += r.error;
        out.converged = out.converged && r.converged;
    }
    if (n > 1) {
        const auto c = cross_total(model, spec, std::abs(value.value()));
        value.add(c.value);
        error += c.error;
        out.evaluations = c.evaluations;
        out.converged = out.converged && c.converged;
    }
    out.value = pref * value.value();
    out.error = pref * error;
    return out;
}

GridScan grid_scan(const SpectralModel &model, double u, GridAxis q1, GridAxis q2, bool breakdown,
                   unsigned threads) {
    require_lightfront_fraction(u);
    for (const GridAxis &axis : {q1, q2}) {
        if (axis.n == 0 || !std::isfinite(axis.min) || !std::isfinite(axis.max)) {
            throw std::invalid_argument("grid axes need n >= 1 and finite bounds");
        }
    }
    GridScan scan{q1, q2, u, {}};
    scan.cells.resize(q1.n * q2.n);
    auto rows = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < q1.n; i += step) {
            for (std::size_t j = 0; j < q2.n; ++j) {
                scan.cells[i * q2.n + j] = model.evaluate(SpectrumPoint(u, {q1.at(i), q2.at(j)}), breakdown);
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, q1.n);
    if (workers == 1) {
        rows(0, 1);
        return scan;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(rows, w, workers);
        }
    }
    return scan;
}

} // namespace deltapair
