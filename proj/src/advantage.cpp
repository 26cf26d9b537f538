#include "naqi/advantage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace naqi {

std::string_view to_string(FrameFamily f) { return f == FrameFamily::FullOrbit ? "full-orbit" : "two-angle"; }

ComplexMatrix ConditionalEnsemble::average() const {
    ComplexMatrix acc(2);
    for (const auto& o : outcomes)
        if (o.defined) acc += cplx{o.probability} * o.state.matrix();
    return acc;
}

ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho_ab, const ProjectorPair& pi) {
    if (rho_ab.dim() != 4) throw std::invalid_argument("conditional_ensemble needs a two-qubit state");
    static constexpr std::array<std::size_t, 2> kDims{2, 2};
    static constexpr std::array<std::size_t, 1> kKeepB{1};
    ConditionalEnsemble ens;
    const std::array<const ComplexMatrix*, 2> projectors{&pi.plus, &pi.minus};
    for (std::size_t a = 0; a < 2; ++a) {
        const ComplexMatrix lifted = tensor(*projectors[a], pauli::identity());
        const ComplexMatrix post = lifted * rho_ab.matrix() * lifted;
        ComplexMatrix unnormalized = partial_trace(post, kKeepB, kDims);
        const double p = unnormalized.trace().real();
        auto& out = ens.outcomes[a];
        out.probability = std::max(p, 0.0);
        if (p >= kNegligibleProbability) {
            unnormalized *= 1.0 / p;
            out.state = DensityMatrix(unnormalized);
            out.defined = true;
        }
    }
    return ens;
}

double objective(const DensityMatrix& rho_ab, const MubTriple& mub, const MeasurementSet& meas, Measure measure) {
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const ConditionalEnsemble ens = conditional_ensemble(rho_ab, meas.projectors[i]);
        for (const auto& o : ens.outcomes)
            if (o.defined) total += o.probability * imag_measure(measure, o.state, mub.bases[i]);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Pauli-form evaluation

SteeringModel::SteeringModel(const DensityMatrix& rho_ab) : form_(pauli_decompose(rho_ab)) {}

double SteeringModel::term(Vec3 m, Vec3 axis, Measure measure) const {
    const Vec3 steered = form_.t.apply_transpose(m);
    if (measure == Measure::L1) {
        // p_a |b_a . axis| = |(s +- T^T m) . axis| / 2
        const double x = dot(form_.s, axis), y = dot(steered, axis);
        return 0.5 * (std::abs(x + y) + std::abs(x - y));
    }
    const double rm = dot(form_.r, m);
    double total = 0.0;
    for (const double sign : {1.0, -1.0}) {
        const double p = 0.5 * (1.0 + sign * rm);
        if (p < kNegligibleProbability) continue;
        const Vec3 b = (0.5 / p) * (form_.s + sign * steered);
        total += p * imag_rel_entropy_bloch(b, axis);
    }
    return total;
}

double SteeringModel::reduced_term(Vec3 axis, Measure measure) const {
    return imag_measure_bloch(measure, form_.s, axis);
}

namespace {

SphericalAngles angles_of(Vec3 m) {
    const double len = norm(m);
    if (len == 0.0) return {0.0, 0.0};
    const double theta = std::acos(std::clamp(m.z / len, -1.0, 1.0));
    double phi = std::atan2(m.y, m.x);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    return {theta, phi};
}

const std::array<Interval, 2> kSphereBox{Interval{0.0, std::numbers::pi, false},
                                         Interval{0.0, 2.0 * std::numbers::pi, true}};

}  // namespace

SteeringModel::BestMeasurement SteeringModel::best_measurement(Vec3 axis, Measure measure,
                                                               const NaqiConfig& config) const {
    if (measure == Measure::L1 && config.closed_form_l1) {
        // term = max(|s.a|, |m.(T a)|), maximized by m along T a.
        const Vec3 ta = form_.t.apply(axis);
        const double steer = norm(ta);
        const double local = std::abs(dot(form_.s, axis));
        if (steer >= local && steer > 0.0) return {steer, angles_of(ta), true};
        return {local, {0.0, 0.0}, true};
    }
    const auto f = [&](std::span<const double> x) { return term(bloch_axis(x[0], x[1]), axis, measure); };
    const MaximizeResult r = maximize(f, kSphereBox, config.inner);
    return {r.value, {r.argmax[0], r.argmax[1]}, r.diagnostics.converged};
}

// ---------------------------------------------------------------------------
// Outer search

namespace {

std::vector<Interval> frame_box(FrameFamily family) {
    std::vector<Interval> box{{0.0, std::numbers::pi, false}, {0.0, 2.0 * std::numbers::pi, true}};
    // chi -> chi + pi only reorders and rephases basis vectors.
    if (family == FrameFamily::FullOrbit) box.push_back({0.0, std::numbers::pi, true});
    return box;
}

MubTriple triple_at(std::span<const double> x) { return mub_triple(x[0], x[1], x.size() > 2 ? x[2] : 0.0); }

bool same_line(Vec3 a, Vec3 b) { return norm(a - b) < 1e-12 || norm(a + b) < 1e-12; }

// Evaluates each distinct imaginarity axis once; both measures are even in the axis.
template <class TermFn>
double sum_over_axes(const std::array<Vec3, 3>& axes, TermFn&& term_for) {
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
        bool reused = false;
        for (std::size_t j = 0; j < i && !reused; ++j)
            if (same_line(axes[i], axes[j])) {
                v[i] = v[j];
                reused = true;
            }
        if (!reused) v[i] = term_for(axes[i]);
    }
    return v[0] + v[1] + v[2];
}

}  // namespace

NaqiResult naqi_value(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config) {
    if (rho_ab.dim() != 4) throw std::invalid_argument("naqi_value needs a two-qubit state");
    config.outer.validate();
    config.inner.validate();
    const SteeringModel model(rho_ab);
    const auto box = frame_box(config.family);

    const auto f = [&](std::span<const double> x) {
        return sum_over_axes(triple_at(x).imaginarity_axes(),
                             [&](Vec3 a) { return model.best_measurement(a, measure, config).value; });
    };
    const MaximizeResult r = maximize(f, box, config.outer);

    NaqiResult out;
    out.measure = measure;
    out.family = config.family;
    out.value = r.value;
    out.theta1 = r.argmax[0];
    out.phi1 = r.argmax[1];
    out.chi = r.argmax.size() > 2 ? r.argmax[2] : 0.0;

    bool inner_ok = true;
    const auto axes = triple_at(r.argmax).imaginarity_axes();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto best = model.best_measurement(axes[i], measure, config);
        out.measurement_angles[i] = best.angles;
        inner_ok = inner_ok && best.converged;
    }

    out.witness = out.value - bound_constant(measure).value;
    out.verdict = out.witness > config.verdict_margin;
    out.steerable_implied = out.verdict;

    out.diagnostics.outer_starts = r.diagnostics.starts;
    out.diagnostics.outer_iterations = r.diagnostics.total_iterations;
    out.diagnostics.outer_evaluations = r.diagnostics.function_evaluations;
    out.diagnostics.second_best_gap = r.diagnostics.second_best_gap;
    out.diagnostics.certified = r.diagnostics.converged && inner_ok;
    return out;
}

NaqiResult witness(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config) {
    return naqi_value(rho_ab, measure, config);
}

double reduced_state_lower_bound(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config) {
    if (rho_ab.dim() != 4) throw std::invalid_argument("reduced_state_lower_bound needs a two-qubit state");
    const SteeringModel model(rho_ab);
    const auto box = frame_box(config.family);
    const auto f = [&](std::span<const double> x) {
        return sum_over_axes(triple_at(x).imaginarity_axes(), [&](Vec3 a) { return model.reduced_term(a, measure); });
    };
    return maximize(f, box, config.outer).value;
}

}  // namespace naqi
