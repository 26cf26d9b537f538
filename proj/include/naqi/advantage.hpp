// advantage.hpp
// Nonlocal advantage of quantum imaginarity for two-qubit states.
//
// Alice measures three projective measurements on A; Bob evaluates the
// imaginarity of each conditional ensemble in one basis of a MUB triple:
//
//     N(rho_AB) = max_{M, Pi} sum_{i,a} p(a|Pi_i) I_{M_i}(rho_{B|Pi_i^a})
//
// A state has the advantage when N exceeds the single-qubit complementarity
// bound, which in turn certifies steerability from A to B.

#pragma once

#include <array>
#include <optional>

#include "naqi/complementarity.hpp"
#include "naqi/frames.hpp"
#include "naqi/imaginarity.hpp"
#include "naqi/optimize.hpp"
#include "naqi/qmat.hpp"

namespace naqi {

/// Outcomes with probability below this contribute nothing.
inline constexpr double kNegligibleProbability = 1e-12;

struct ConditionalOutcome {
    double probability = 0.0;
    DensityMatrix state = DensityMatrix::maximally_mixed(2);  // placeholder when undefined
    bool defined = false;
};

struct ConditionalEnsemble {
    std::array<ConditionalOutcome, 2> outcomes;

    /// sum_a p_a rho_{B|a}; equals Tr_A rho_AB.
    ComplexMatrix average() const;
};

/// p_a = Tr[(Pi_a (x) I) rho], rho_{B|a} = Tr_A[(Pi_a (x) I) rho (Pi_a (x) I)] / p_a.
ConditionalEnsemble conditional_ensemble(const DensityMatrix& rho_ab, const ProjectorPair& pi);

/// The summed average imaginarity for fixed frames, computed from explicit
/// conditional density matrices.
double objective(const DensityMatrix& rho_ab, const MubTriple& mub, const MeasurementSet& meas, Measure measure);

/// Which MUB triples the outer search ranges over.
enum class FrameFamily {
    FullOrbit,  // (theta1, phi1, chi): every unitary image of the Pauli eigenbasis triple
    TwoAngle,   // (theta1, phi1) with chi = 0
};

struct NaqiConfig {
    OptimizerConfig outer;  // MUB angles
    /// Measurement angles. Only used for the relative entropy unless
    /// closed_form_l1 is false.
    OptimizerConfig inner{12, 200, 1e-9, 3, 0, 1};
    FrameFamily family = FrameFamily::FullOrbit;
    /// For L1 the best measurement for a basis with imaginarity axis a is
    /// known exactly: max(|s.a|, |T a|). Disable to force the numeric search.
    bool closed_form_l1 = true;
    /// verdict = witness > verdict_margin
    double verdict_margin = 1e-7;
};

/// Two-qubit state in Pauli form, evaluating ensemble imaginarities through
/// Bloch vectors: p_{+-} b_{+-} = (s +- T^T m)/2 for Alice's axis m.
class SteeringModel {
public:
    explicit SteeringModel(const DensityMatrix& rho_ab);
    explicit SteeringModel(const TwoQubitPauliForm& form) : form_(form) {}

    const TwoQubitPauliForm& form() const { return form_; }

    /// sum_a p_a I_axis(rho_{B|a}) for measurement axis m.
    double term(Vec3 measurement_axis, Vec3 imaginarity_axis, Measure measure) const;
    /// I_axis(rho_B)
    double reduced_term(Vec3 imaginarity_axis, Measure measure) const;

    struct BestMeasurement {
        double value = 0.0;
        SphericalAngles angles;
        bool converged = true;
    };
    /// Maximizes term() over Alice's measurement for one basis.
    BestMeasurement best_measurement(Vec3 imaginarity_axis, Measure measure, const NaqiConfig& config) const;

private:
    TwoQubitPauliForm form_;
};

struct NaqiDiagnostics {
    int outer_starts = 0;
    int outer_iterations = 0;
    std::size_t outer_evaluations = 0;
    std::optional<double> second_best_gap;
    bool certified = false;  // outer and inner refinements reached tolerance
};

struct NaqiResult {
    Measure measure = Measure::L1;
    double value = 0.0;
    double witness = 0.0;  // value - bound
    bool verdict = false;
    bool steerable_implied = false;
    FrameFamily family = FrameFamily::FullOrbit;
    double theta1 = 0.0, phi1 = 0.0, chi = 0.0;
    std::array<SphericalAngles, 3> measurement_angles{};
    NaqiDiagnostics diagnostics;
};

/// Nested maximization: outer search over MUB triples; for each triple the
/// three measurement terms are maximized independently.
NaqiResult naqi_value(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config = {});

/// naqi_value plus the verdict against bound_constant(measure). Kept as a
/// separate entry point for callers that only read the witness.
NaqiResult witness(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config = {});

/// max over the same MUB family of sum_i I_{M_i}(Tr_A rho_AB).
double reduced_state_lower_bound(const DensityMatrix& rho_ab, Measure measure, const NaqiConfig& config = {});

std::string_view to_string(FrameFamily f);

}  // namespace naqi
