#include "deltapair/pulse_train.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace deltapair {

PulseTrain PulseTrain::normalize(std::span<const Jump> raw) {
    for (const Jump &j : raw) {
        if (!std::isfinite(j.x) || !is_finite(j.da)) {
            throw std::invalid_argument("pulse train entries must be finite");
        }
    }
    std::vector<Jump> sorted(raw.begin(), raw.end());
    // Sort by position, then by da so that merged sums do not depend on the
    // input order.
    std::sort(sorted.begin(), sorted.end(), [](const Jump &a, const Jump &b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.da.x != b.da.x) return a.da.x < b.da.x;
        return a.da.y < b.da.y;
    });

    PulseTrain train;
    train.input_count_ = raw.size();
    for (std::size_t k = 0; k < sorted.size();) {
        Jump merged = sorted[k];
        std::size_t next = k + 1;
        for (; next < sorted.size() && sorted[next].x == merged.x; ++next) {
            merged.da += sorted[next].da;
            ++train.merged_count_;
        }
        if (merged.da.x == 0.0 && merged.da.y == 0.0) {
            ++train.dropped_count_;
        } else {
            train.jumps_.push_back(merged);
        }
        k = next;
    }

    train.potentials_.reserve(train.jumps_.size() + 1);
    for (const Jump &j : train.jumps_) {
        train.potentials_.push_back(train.potentials_.back() + j.da);
    }
    return train;
}

double PulseTrain::max_potential() const noexcept {
    double m = 0.0;
    for (Vec2 a : potentials_) {
        m = std::max(m, norm(a));
    }
    return m;
}

PulseTrain PulseTrain::shifted(double offset) const {
    std::vector<Jump> moved = jumps_;
    for (Jump &j : moved) {
        j.x += offset;
    }
    return normalize(moved);
}

PulseTrain PulseTrain::negated() const {
    std::vector<Jump> flipped = jumps_;
    for (Jump &j : flipped) {
        j.da = -j.da;
    }
    return normalize(flipped);
}

SegmentMomentumTable segment_momenta(const PulseTrain &train, const PhotonProbe &probe,
                                     const SpectrumPoint &point) {
    const auto &a = train.potentials();
    const Vec2 a_final = a.back();
    SegmentMomentumTable table;
    table.pperp.reserve(a.size());
    table.lambda.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        // The last segment is the detected momentum itself.
        const Vec2 p = (k + 1 == a.size()) ? point.qperp() : point.qperp() - (a_final - a[k]);
        table.pperp.push_back(p);
        table.lambda.push_back(lf_dot(probe, point.u(), p));
    }
    return table;
}

std::vector<ExtendedPhase> accumulated_phases_extended(const PulseTrain &train,
                                                       const SegmentMomentumTable &table,
                                                       const SpectrumPoint &point) {
    const auto &jumps = train.jumps();
    std::vector<ExtendedPhase> phases;
    if (jumps.empty()) {
        return phases;
    }
    phases.reserve(jumps.size());
    phases.emplace_back(0.0);
    const double one_minus_u = 1.0 - point.u();
    for (std::size_t k = 1; k < jumps.size(); ++k) {
        const double gap = jumps[k].x - jumps[k - 1].x;
        const ExtendedPhase step = ExtendedPhase::product(gap, table.lambda[k]).divided_by(one_minus_u);
        phases.push_back(phases.back() + step);
    }
    return phases;
}

std::vector<double> accumulated_phases(const PulseTrain &train, const SegmentMomentumTable &table,
                                       const SpectrumPoint &point) {
    const auto extended = accumulated_phases_extended(train, table, point);
    std::vector<double> phases;
    phases.reserve(extended.size());
    for (const auto &p : extended) {
        phases.push_back(p.value());
    }
    return phases;
}

double classical_drift(const PulseTrain &train, const SegmentMomentumTable &table,
                       const PhotonProbe &probe, const SpectrumPoint &point, std::size_t i,
                       std::size_t j, double photon_minus) {
    if (!(i < j && j < train.size())) {
        throw std::out_of_range("classical_drift needs jump indices i < j < N, got (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    const auto &jumps = train.jumps();
    const double u = point.u();
    const double nq = u * photon_minus;

    // Piecewise-constant velocity between the kicks; physical lightfront
    // time per unit x is n.l / m^2 = photon_minus.
    FourVector displacement;
    for (std::size_t k = i + 1; k <= j; ++k) {
        const double dphi = (jumps[k].x - jumps[k - 1].x) * photon_minus;
        const FourVector pi = onshell_momentum(u, table.pperp[k], photon_minus);
        displacement += (dphi / nq) * pi;
    }
    const FourVector l = photon_momentum(probe, photon_minus);
    return u / (2.0 * (1.0 - u)) * minkowski_dot(l, displacement);
}

} // namespace deltapair
