#include "naqi/complementarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>

namespace naqi {

double mub_imaginarity_sum(BlochVector n, const MubTriple& triple, Measure measure) {
    const DensityMatrix rho = bloch_to_density(n);
    double sum = 0.0;
    for (const auto& basis : triple.bases) sum += imag_measure(measure, rho, basis);
    return sum;
}

namespace {

double distance(Vec3 a, Vec3 b) { return norm(a - b); }

BlochVector canonicalize(BlochVector n, const MubTriple& triple, Measure measure, double value) {
    auto same_value = [&](BlochVector c) {
        return std::abs(mub_imaginarity_sum(c, triple, measure) - value) <= 1e-12 * std::max(1.0, std::abs(value));
    };
    for (const BlochVector& c : {BlochVector{std::abs(n.x), std::abs(n.y), n.z},
                                 BlochVector{std::abs(n.x), std::abs(n.y), -n.z}, -1.0 * n})
        if (c.x >= 0.0 && c.y >= 0.0 && same_value(c)) return c;
    return n;
}

}  // namespace

StateMaximum maximize_sum_over_states(Measure measure, const MubTriple& triple, const OptimizerConfig& config) {
    const std::array<Interval, 2> box{Interval{0.0, std::numbers::pi, false},
                                      Interval{0.0, 2.0 * std::numbers::pi, true}};
    const auto f = [&](std::span<const double> x) {
        return mub_imaginarity_sum(bloch_axis(x[0], x[1]), triple, measure);
    };
    MaximizeResult r = maximize(f, box, config);

    StateMaximum out;
    out.value = r.value;
    out.argmax = canonicalize(bloch_axis(r.argmax[0], r.argmax[1]), triple, measure, r.value);
    for (const auto& opt : r.diagnostics.optima) {
        if (opt.value < r.value - 1e-6) continue;
        const BlochVector c = canonicalize(bloch_axis(opt.point[0], opt.point[1]), triple, measure, opt.value);
        bool seen = false;
        for (const auto& m : out.local_maxima) seen = seen || distance(m, c) < 1e-4;
        if (!seen) out.local_maxima.push_back(c);
    }
    out.diagnostics = std::move(r.diagnostics);
    return out;
}

namespace {

BoundConstant recompute_rel_entropy_bound() {
    const StateMaximum m = maximize_sum_over_states(Measure::RelativeEntropy, mub_triple(0.0, 0.0));
    if (std::abs(m.value - kPublishedRelEntropyBound) > kRelEntropyBoundTolerance)
        throw std::runtime_error("recomputed relative-entropy bound " + std::to_string(m.value) +
                                 " is not within 5e-4 of 2.02685");
    return {Measure::RelativeEntropy, m.value, m.argmax, Provenance::Recomputed};
}

}  // namespace

const BoundConstant& bound_constant(Measure measure) {
    static const BoundConstant l1{Measure::L1, std::sqrt(5.0),
                                  BlochVector{1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0), 0.0}, Provenance::Analytic};
    if (measure == Measure::L1) return l1;
    static const BoundConstant rel = recompute_rel_entropy_bound();
    return rel;
}

}  // namespace naqi
