#pragma once

// Globally adaptive quadrature: Gauss-Kronrod (10/21) on intervals and the
// Genz-Malik degree 7/5 rule on hyper-rectangles. The region with the
// largest error estimate is bisected until the summed error meets the
// tolerance or the evaluation budget runs out.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

namespace deltapair {

struct Tolerance {
    double rel = 1e-8;
    double abs = 0.0;
    std::size_t max_evals = 2'000'000;
};

template <class V>
struct BasicQuadratureResult {
    V value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using QuadratureResult = BasicQuadratureResult<double>;

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

namespace detail {

template <class V>
class Accumulator {
public:
    void add(double v) noexcept { sum_.add(v); }
    double value() const noexcept { return sum_.value(); }

private:
    CompensatedSum sum_;
};

template <class T>
class Accumulator<std::complex<T>> {
public:
    void add(std::complex<T> v) noexcept {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<T> value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

inline constexpr std::array<double, 11> kKronrodNodes{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452514, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the Kronrod nodes with odd index.
inline constexpr std::array<double, 5> kGaussWeights{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval &o) const noexcept { return error < o.error; }
};

template <class F>
Interval gauss_kronrod_21(F &f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrodWeights[10] * fc;
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f1{}, f2{};
    for (std::size_t k = 0; k < 10; ++k) {
        const double dx = half * kKronrodNodes[k];
        f1[k] = f(centre - dx);
        f2[k] = f(centre + dx);
        const double pair = f1[k] + f2[k];
        kronrod += kKronrodWeights[k] * pair;
        abs_sum += kKronrodWeights[k] * (std::abs(f1[k]) + std::abs(f2[k]));
        if (k % 2 == 1) {
            gauss += kGaussWeights[k / 2] * pair;
        }
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (std::size_t k = 0; k < 10; ++k) {
        asc += kKronrodWeights[k] * (std::abs(f1[k] - mean) + std::abs(f2[k] - mean));
    }
    const double value = kronrod * half;
    const double resasc = asc * std::abs(half);
    const double resabs = abs_sum * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = 2.220446049250313e-16;
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {a, b, value, err};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integral of f over [a, b].
template <class F>
QuadratureResult integrate_interval(F &&f, double a, double b, const Tolerance &tol) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Interval> heap;
    heap.push(detail::gauss_kronrod_21(f, a, b));
    out.evaluations = 21;
    double total = heap.top().value;
    double total_err = heap.top().error;
    while (true) {
        if (total_err <= std::max(tol.abs, tol.rel * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (out.evaluations + 42 > tol.max_evals) {
            break;
        }
        const detail::Interval worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            break;  // interval exhausted at machine resolution
        }
        heap.pop();
        const auto left = detail::gauss_kronrod_21(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    CompensatedSum value, error;
    while (!heap.empty()) {
        value.add(heap.top().value);
        error.add(heap.top().error);
        heap.pop();
    }
    out.value = value.value();
    out.error = error.value();
    return out;
}

namespace detail {

template <std::size_t Dim, class V = double>
struct Box {
    std::array<double, Dim> centre;
    std::array<double, Dim> half;
    V value;
    double error;
    std::size_t split;
    bool operator<(const Box &o) const noexcept { return error < o.error; }
};

template <std::size_t Dim, class F, class V = std::invoke_result_t<F &, const std::array<double, Dim> &>>
Box<Dim, V> genz_malik(F &f, const std::array<double, Dim> &centre, const std::array<double, Dim> &half) {
    constexpr double n = static_cast<double>(Dim);
    const double lambda2 = std::sqrt(9.0 / 70.0);
    const double lambda4 = std::sqrt(9.0 / 10.0);
    const double lambda5 = std::sqrt(9.0 / 19.0);
    const double w1 = (12824.0 - 9120.0 * n + 400.0 * n * n) / 19683.0;
    const double w2 = 980.0 / 6561.0;
    const double w3 = (1820.0 - 400.0 * n) / 19683.0;
    const double w4 = 200.0 / 19683.0;
    const double w5 = 6859.0 / 19683.0 / static_cast<double>(1u << Dim);
    const double e1 = (729.0 - 950.0 * n + 50.0 * n * n) / 729.0;
    const double e2 = 245.0 / 486.0;
    const double e3 = (265.0 - 100.0 * n) / 1458.0;
    const double e4 = 25.0 / 729.0;

    double volume = 1.0;
    for (std::size_t i = 0; i < Dim; ++i) volume *= 2.0 * half[i];

    std::array<double, Dim> x = centre;
    const V f0 = f(x);
    V sum2{}, sum3{}, sum4{}, sum5{};
    std::array<double, Dim> diff{};
    for (std::size_t i = 0; i < Dim; ++i) {
        x[i] = centre[i] - lambda2 * half[i];
        const V a = f(x);
        x[i] = centre[i] + lambda2 * half[i];
        const V b = f(x);
        x[i] = centre[i] - lambda4 * half[i];
        const V c = f(x);
        x[i] = centre[i] + lambda4 * half[i];
        const V d = f(x);
        x[i] = centre[i];
        sum2 += a + b;
        sum3 += c + d;
        diff[i] = std::abs(a + b - 2.0 * f0 - (c + d - 2.0 * f0) / 7.0);
    }
    for (std::size_t i = 0; i < Dim; ++i) {
        for (std::size_t j = i + 1; j < Dim; ++j) {
            for (int si : {-1, 1}) {
                for (int sj : {-1, 1}) {
                    x[i] = centre[i] + si * lambda4 * half[i];
                    x[j] = centre[j] + sj * lambda4 * half[j];
                    sum4 += f(x);
                }
            }
            x[i] = centre[i];
            x[j] = centre[j];
        }
    }
    for (std::size_t corner = 0; corner < (std::size_t{1} << Dim); ++corner) {
        for (std::size_t i = 0; i < Dim; ++i) {
            x[i] = centre[i] + (((corner >> i) & 1u) ? lambda5 : -lambda5) * half[i];
        }
        sum5 += f(x);
    }
    const V r7 = volume * (w1 * f0 + w2 * sum2 + w3 * sum3 + w4 * sum4 + w5 * sum5);
    const V r5 = volume * (e1 * f0 + e2 * sum2 + e3 * sum3 + e4 * sum4);

    std::size_t split = 0;
    for (std::size_t i = 1; i < Dim; ++i) {
        const double rel = diff[i] - diff[split];
        if (rel > 1e-10 * std::max(diff[i], diff[split])) {
            split = i;
        } else if (std::abs(rel) <= 1e-10 * std::max(diff[i], diff[split]) && half[i] > half[split]) {
            split = i;
        }
    }
    return {centre, half, r7, std::abs(r7 - r5), split};
}

template <std::size_t Dim>
constexpr std::size_t genz_malik_points() {
    return (std::size_t{1} << Dim) + 2 * Dim * Dim + 2 * Dim + 1;
}

} // namespace detail

/// Adaptive cubature of f(std::array<double, Dim>) over the union of the
/// cells of a tensor grid; `cuts[d]` lists the ascending breakpoints of axis d,
/// endpoints included. Seeding the heap with a graded grid lets the error
/// estimate see features narrower than the whole box.
template <std::size_t Dim, class F, class V = std::invoke_result_t<F &, const std::array<double, Dim> &>>
BasicQuadratureResult<V> integrate_grid(F &&f, const std::array<std::vector<double>, Dim> &cuts,
                                        const Tolerance &tol) {
    static_assert(Dim >= 2, "use integrate_interval in one dimension");
    constexpr std::size_t per_box = detail::genz_malik_points<Dim>();
    BasicQuadratureResult<V> out;
    std::priority_queue<detail::Box<Dim, V>> heap;
    V total{};
    double total_err = 0.0;
    std::array<std::size_t, Dim> idx{};
    std::size_t cells = 1;
    for (std::size_t d = 0; d < Dim; ++d) {
        if (cuts[d].size() < 2) {
            out.converged = true;
            return out;
        }
        cells *= cuts[d].size() - 1;
    }
    for (std::size_t c = 0; c < cells; ++c) {
        std::size_t rest = c;
        std::array<double, Dim> centre{}, half{};
        bool empty = false;
        for (std::size_t d = 0; d < Dim; ++d) {
            idx[d] = rest % (cuts[d].size() - 1);
            rest /= cuts[d].size() - 1;
            centre[d] = 0.5 * (cuts[d][idx[d]] + cuts[d][idx[d] + 1]);
            half[d] = 0.5 * (cuts[d][idx[d] + 1] - cuts[d][idx[d]]);
            empty = empty || !(half[d] > 0.0);
        }
        if (empty) {
            continue;
        }
        heap.push(detail::genz_malik<Dim>(f, centre, half));
        out.evaluations += per_box;
    }
    {
        // Sum the seeds in a fixed order for reproducibility.
        auto copy = heap;
        while (!copy.empty()) {
            total += copy.top().value;
            total_err += copy.top().error;
            copy.pop();
        }
    }
    while (!heap.empty()) {
        if (total_err <= std::max(tol.abs, tol.rel * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (out.evaluations + 2 * per_box > tol.max_evals) {
            break;
        }
        const detail::Box<Dim, V> worst = heap.top();
        heap.pop();
        const std::size_t d = worst.split;
        auto h = worst.half;
        h[d] *= 0.5;
        auto c1 = worst.centre;
        auto c2 = worst.centre;
        c1[d] -= h[d];
        c2[d] += h[d];
        const auto left = detail::genz_malik<Dim>(f, c1, h);
        const auto right = detail::genz_malik<Dim>(f, c2, h);
        out.evaluations += 2 * per_box;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    if (heap.empty()) {
        out.converged = true;
    }
    detail::Accumulator<V> value;
    CompensatedSum error;
    while (!heap.empty()) {
        value.add(heap.top().value);
        error.add(heap.top().error);
        heap.pop();
    }
    out.value = value.value();
    out.error = error.value();
    return out;
}

/// Adaptive cubature of f(std::array<double, Dim>) over the box [lo, hi].
template <std::size_t Dim, class F>
auto integrate_box(F &&f, const std::array<double, Dim> &lo,
                               const std::array<double, Dim> &hi, const Tolerance &tol) {
    std::array<std::vector<double>, Dim> cuts;
    for (std::size_t d = 0; d < Dim; ++d) {
        cuts[d] = {lo[d], hi[d]};
    }
    return integrate_grid<Dim>(std::forward<F>(f), cuts, tol);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t n) : nodes(n), weights(n) {
        for (std::size_t i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16) break;
            }
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

/// Filon-type rule for int_{-1}^{1} exp(i omega t) f(t) dt: f is sampled at
/// Gauss-Legendre nodes, expanded in Legendre polynomials, and each term is
/// integrated exactly, 2 i^k j_k(omega). The cost does not depend on omega.
class FilonLegendre {
public:
    explicit FilonLegendre(std::size_t n = 16) : rule_(n), legendre_(n * n) {
        for (std::size_t i = 0; i < n; ++i) {
            const double x = rule_.nodes[i];
            double p0 = 1.0, p1 = x;
            legendre_[i] = 1.0;
            if (n > 1) legendre_[n + i] = x;
            for (std::size_t k = 2; k < n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                legendre_[k * n + i] = pk;
                p0 = p1;
                p1 = pk;
            }
        }
    }

    const std::vector<double> &nodes() const noexcept { return rule_.nodes; }
    std::size_t size() const noexcept { return rule_.nodes.size(); }

    struct Result {
        std::complex<double> value;
        double error;  ///< from the two highest Legendre coefficients
    };

    Result integrate(const std::vector<std::complex<double>> &f, double omega) const {
        const std::size_t n = size();
        std::complex<double> total{};
        double tail = 0.0;
        std::complex<double> ik{1.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> c{};
            for (std::size_t i = 0; i < n; ++i) {
                c += rule_.weights[i] * legendre_[k * n + i] * f[i];
            }
            c *= 0.5 * (2.0 * static_cast<double>(k) + 1.0);
            const double moment = 2.0 * spherical_bessel(static_cast<unsigned>(k), std::abs(omega));
            // j_k is even/odd in omega like t^k.
            const double sign = (omega < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
            total += c * ik * (sign * moment);
            if (k + 2 >= n) {
                tail += std::abs(c);
            }
            ik *= std::complex<double>{0.0, 1.0};
        }
        return {total, 2.0 * tail};
    }

    /// j_k(x) for x >= 0: upward recurrence above the turning point, Miller's
    /// downward recurrence normalised by j_0 below it.
    static double spherical_bessel(unsigned k, double x) {
        if (x == 0.0) {
            return k == 0 ? 1.0 : 0.0;
        }
        const double j0 = x < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        if (k == 0) {
            return j0;
        }
        if (x > static_cast<double>(k)) {
            double jm = j0;
            double j = x < 1e-4 ? x / 3.0 : (std::sin(x) / x - std::cos(x)) / x;
            for (unsigned m = 1; m < k; ++m) {
                const double next = (2.0 * m + 1.0) / x * j - jm;
                jm = j;
                j = next;
            }
            return j;
        }
        const unsigned start = k + 20 + static_cast<unsigned>(std::sqrt(40.0 * (k + 1)));
        double jp = 0.0, j = 1e-300, wanted = 0.0;
        for (unsigned m = start; m > 0; --m) {
            const double prev = (2.0 * m + 1.0) / x * j - jp;
            jp = j;
            j = prev;
            if (m - 1 == k) wanted = j;
            if (std::abs(j) > 1e250) {
                j *= 1e-250;
                jp *= 1e-250;
                wanted *= 1e-250;
            }
        }
        return wanted * (j0 / j);
    }

private:
    GaussLegendre rule_;
    std::vector<double> legendre_;  // P_k at node i, k * n + i
};

} // namespace deltapair
