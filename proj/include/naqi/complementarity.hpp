// complementarity.hpp
// Upper bounds on the summed imaginarity of one qubit over a triple of
// mutually unbiased bases:
//     l1:                sum <= sqrt(5)
//     relative entropy:  sum <= 2.02685 (recomputed here at full precision)

#pragma once

#include <vector>

#include "naqi/frames.hpp"
#include "naqi/imaginarity.hpp"
#include "naqi/optimize.hpp"

namespace naqi {

enum class Provenance { Analytic, Recomputed };

struct BoundConstant {
    Measure measure = Measure::L1;
    double value = 0.0;
    BlochVector maximizer;
    Provenance provenance = Provenance::Analytic;
};

/// Published value of the relative-entropy bound; the recomputed constant
/// must land within kRelEntropyBoundTolerance of it.
inline constexpr double kPublishedRelEntropyBound = 2.02685;
inline constexpr double kRelEntropyBoundTolerance = 5e-4;

/// Sum over the three bases of the triple, evaluated through the density matrix.
double mub_imaginarity_sum(BlochVector n, const MubTriple& triple, Measure measure);

struct StateMaximum {
    double value = 0.0;
    BlochVector argmax;                       // canonical representative, see below
    std::vector<BlochVector> local_maxima;    // distinct maxima within 1e-6 of value
    MaximizeDiagnostics diagnostics;
};

/// Maximizes the sum over pure states (the unit sphere). The reported argmax
/// is moved to n_x >= 0, n_y >= 0 whenever a sign flip leaves the sum
/// unchanged.
StateMaximum maximize_sum_over_states(Measure measure, const MubTriple& triple, const OptimizerConfig& config = {});

/// L1: sqrt(5) at (1/sqrt5, 2/sqrt5, 0). RelativeEntropy: computed once on
/// first use and cached; throws std::runtime_error if the recomputation lands
/// outside the published tolerance.
const BoundConstant& bound_constant(Measure measure);

}  // namespace naqi
