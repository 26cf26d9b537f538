// optimize.hpp
// Derivative-free maximization over small angle boxes: a coarse grid scan
// followed by Nelder-Mead refinement from the best grid cells. Plus a
// bisection helper for locating parameter thresholds.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace naqi {

struct OptimizerConfig {
    int grid_points_per_dim = 24;
    int refine_iterations = 200;
    double refine_tolerance = 1e-9;  // simplex diameter
    int multistart_count = 8;
    std::uint64_t seed = 0;
    /// Threads used for grid scans and multistarts. Results do not depend on it.
    unsigned workers = 1;

    /// Throws std::invalid_argument naming the first non-positive field.
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;  // wrap modulo (hi - lo) instead of clamping
};

class NonFiniteObjective : public std::runtime_error {
public:
    NonFiniteObjective(const std::string& what, std::vector<double> where)
        : std::runtime_error(what), location(std::move(where)) {}
    std::vector<double> location;
};

struct LocalOptimum {
    double value = 0.0;
    std::vector<double> point;
    int iterations = 0;
    bool converged = false;
};

struct MaximizeDiagnostics {
    std::size_t grid_evaluations = 0;
    std::size_t function_evaluations = 0;
    int starts = 0;
    int total_iterations = 0;
    bool converged = false;  // the winning start reached refine_tolerance
    double best_grid_value = 0.0;
    /// best minus the best optimum located elsewhere in the box, if any
    std::optional<double> second_best_gap;
    std::vector<LocalOptimum> optima;  // one per start, best first
};

struct MaximizeResult {
    double value = 0.0;
    std::vector<double> argmax;
    MaximizeDiagnostics diagnostics;
};

using Objective = std::function<double(std::span<const double>)>;

/// Box dimension must be between 1 and 4. `f` must be safe to call
/// concurrently when config.workers > 1.
MaximizeResult maximize(const Objective& f, std::span<const Interval> box, const OptimizerConfig& config);

/// Wraps periodic coordinates and clamps the others into the box.
void map_into_box(std::span<double> x, std::span<const Interval> box);

/// Bisection on a sign change of g over [lo, hi]. Returns the midpoint of the
/// final bracket, whose width is at most tol. Throws std::invalid_argument when
/// g(lo) and g(hi) have the same sign.
double bisect_threshold(const std::function<double(double)>& g, double lo, double hi, double tol = 1e-5);

}  // namespace naqi
