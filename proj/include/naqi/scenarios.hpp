// scenarios.hpp
// Named state families and the sweeps built on them: witness scans over a
// mixing parameter, threshold location, and the three-qubit exclusion study.

#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "naqi/advantage.hpp"

namespace naqi {

enum class FamilyKind { BellMixture, Werner, ThreeQubitPure };

/// lambda0|000> + lambda1 e^{i phi}|100> + lambda2|101> + lambda3|110> + lambda4|111>
struct ThreeQubitAmplitudes {
    std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
    double phi = 0.0;
};

struct StateFamily {
    FamilyKind kind = FamilyKind::Werner;
    double p = 1.0;  // BellMixture, Werner
    ThreeQubitAmplitudes amplitudes;  // ThreeQubitPure

    /// p|phi+><phi+| + (1-p)|psi+><psi+|
    static StateFamily bell_mixture(double p) { return {FamilyKind::BellMixture, p, {}}; }
    /// p|phi+><phi+| + (1-p) I/4
    static StateFamily werner(double p) { return {FamilyKind::Werner, p, {}}; }
    static StateFamily three_qubit(const ThreeQubitAmplitudes& a) { return {FamilyKind::ThreeQubitPure, 0.0, a}; }
};

/// Throws std::invalid_argument on out-of-domain parameters. Three-qubit
/// amplitudes are taken as signed reals and must satisfy sum lambda^2 = 1
/// within 1e-10.
DensityMatrix build_state(const StateFamily& family);

/// lambda0 = cos a, lambda2 = sin a cos b, lambda3 = sin a sin b.
ThreeQubitAmplitudes surface_family(double alpha, double beta);
/// lambda0 = sqrt2/2, lambda2 = (sqrt2/2) cos t, lambda3 = (sqrt2/2) sin t.
ThreeQubitAmplitudes line_family(double theta);

using FamilyTemplate = std::function<StateFamily(double)>;

struct ScanPoint {
    double param = 0.0;
    double value = 0.0;
    double witness = 0.0;
    bool verdict = false;
    bool certified = false;  // not part of the CSV
};

/// One witness record per grid point, in grid order. Points are distributed
/// over config.outer.workers threads.
std::vector<ScanPoint> scan_family(const FamilyTemplate& family, std::span<const double> grid, Measure measure,
                                   const NaqiConfig& config = {});

/// Bisection on the witness sign over [lo, hi]; throws std::invalid_argument
/// when the witness does not change sign across the bracket.
double find_naqi_threshold(const FamilyTemplate& family, Measure measure, double lo, double hi,
                           const NaqiConfig& config = {}, double tol = 1e-5);

/// Ordered qubit pairs of a three-qubit state. Forward: (A->B, B->C, C->A);
/// Reversed: (B->A, C->B, A->C). The first party of each pair is measured.
enum class PairRoles { Forward, Reversed };

std::array<DensityMatrix, 3> ordered_pairs(const DensityMatrix& rho_abc, PairRoles roles = PairRoles::Forward);

struct ExclusionRecord {
    std::vector<double> params;  // (alpha, beta) or (theta)
    std::array<NaqiResult, 3> pairs;
    int count_exceeding = 0;
};

ExclusionRecord exclusion_record(const ThreeQubitAmplitudes& amplitudes, std::vector<double> params, Measure measure,
                                 const NaqiConfig& config = {}, PairRoles roles = PairRoles::Forward);

/// alpha in [0, pi] and beta in [0, 2 pi], endpoints included, row-major in alpha.
std::vector<ExclusionRecord> exclusion_scan_surface(int alpha_points, int beta_points, Measure measure,
                                                    const NaqiConfig& config = {},
                                                    PairRoles roles = PairRoles::Forward);
/// theta in [0, 2 pi], endpoints included.
std::vector<ExclusionRecord> exclusion_scan_line(int theta_points, Measure measure, const NaqiConfig& config = {},
                                                 PairRoles roles = PairRoles::Forward);

/// n evenly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int n);

// CSV writers. Numbers use 9 significant digits.
void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points);
/// Header "alpha,beta,N_AB,N_BC,N_CA,count_exceeding" for two-parameter
/// records, "theta,N_AB,N_BC,N_CA,count_exceeding" for one-parameter records.
void write_exclusion_csv(std::ostream& out, std::span<const ExclusionRecord> records);

}  // namespace naqi
