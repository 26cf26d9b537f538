#include "naqi/optimize.hpp"

#include "naqi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace naqi {

void OptimizerConfig::validate() const {
    if (grid_points_per_dim <= 0) throw std::invalid_argument("grid_points_per_dim must be positive");
    if (refine_iterations <= 0) throw std::invalid_argument("refine_iterations must be positive");
    if (!(refine_tolerance > 0.0)) throw std::invalid_argument("refine_tolerance must be positive");
    if (multistart_count <= 0) throw std::invalid_argument("multistart_count must be positive");
    if (workers == 0) throw std::invalid_argument("workers must be positive");
}

namespace {

// Higher value wins; ties go to the lexicographically smaller point.
bool better(double va, const std::vector<double>& pa, double vb, const std::vector<double>& pb) {
    if (va != vb) return va > vb;
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
}

double checked_eval(const Objective& f, const std::vector<double>& x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        std::string where = "(";
        for (std::size_t i = 0; i < x.size(); ++i) where += (i ? ", " : "") + std::to_string(x[i]);
        throw NonFiniteObjective("objective returned a non-finite value at " + where + ")", x);
    }
    return v;
}

struct GridAxis {
    double start = 0.0;
    double step = 0.0;
};

std::vector<GridAxis> make_grid(std::span<const Interval> box, const OptimizerConfig& config) {
    const int n = config.grid_points_per_dim;
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<GridAxis> axes;
    for (const auto& iv : box) {
        const double width = iv.hi - iv.lo;
        const double u = config.seed == 0 ? 0.0 : unit(rng);
        if (iv.periodic) {
            axes.push_back({iv.lo + u * width / n, width / n});
        } else if (config.seed == 0) {
            // Endpoints included.
            axes.push_back({n == 1 ? iv.lo + 0.5 * width : iv.lo, n == 1 ? 0.0 : width / (n - 1)});
        } else {
            axes.push_back({iv.lo + u * width / n, width / n});
        }
    }
    return axes;
}

struct NelderMeadOutcome {
    double value;
    std::vector<double> point;
    int iterations;
    bool converged;
    std::size_t evaluations;
};

NelderMeadOutcome nelder_mead(const Objective& f, std::span<const Interval> box, std::vector<double> start,
                              double start_value, std::span<const double> steps, const OptimizerConfig& config) {
    const std::size_t dim = start.size();
    std::size_t evals = 0;
    auto eval = [&](std::vector<double> x) {
        map_into_box(x, box);
        ++evals;
        return std::make_pair(checked_eval(f, x), x);
    };

    // Vertices kept in unmapped coordinates; values are of the mapped points.
    std::vector<std::vector<double>> simplex(dim + 1, start);
    std::vector<double> values(dim + 1, start_value);
    for (std::size_t d = 0; d < dim; ++d) {
        simplex[d + 1][d] += steps[d];
        values[d + 1] = eval(simplex[d + 1]).first;
    }

    auto diameter = [&] {
        double worst = 0.0;
        for (std::size_t v = 1; v <= dim; ++v) {
            double acc = 0.0;
            for (std::size_t d = 0; d < dim; ++d) acc += (simplex[v][d] - simplex[0][d]) * (simplex[v][d] - simplex[0][d]);
            worst = std::max(worst, std::sqrt(acc));
        }
        return worst;
    };

    std::vector<std::size_t> order(dim + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        std::vector<std::vector<double>> s2;
        std::vector<double> v2;
        for (auto i : order) {
            s2.push_back(simplex[i]);
            v2.push_back(values[i]);
        }
        simplex = std::move(s2);
        values = std::move(v2);
    };

    int it = 0;
    bool converged = false;
    sort_simplex();
    while (true) {
        if (diameter() <= config.refine_tolerance) {
            converged = true;
            break;
        }
        if (it >= config.refine_iterations) break;
        ++it;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v < dim; ++v)
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[v][d] / static_cast<double>(dim);
        auto along = [&](double coeff) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d) x[d] = centroid[d] + coeff * (simplex[dim][d] - centroid[d]);
            return x;
        };

        const auto xr = along(-1.0);
        const double fr = eval(xr).first;
        if (fr > values[0]) {
            const auto xe = along(-2.0);
            const double fe = eval(xe).first;
            if (fe > fr) {
                simplex[dim] = xe;
                values[dim] = fe;
            } else {
                simplex[dim] = xr;
                values[dim] = fr;
            }
        } else if (fr > values[dim - 1]) {
            simplex[dim] = xr;
            values[dim] = fr;
        } else {
            const bool outside = fr > values[dim];
            const auto xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc).first;
            if (fc > (outside ? fr : values[dim])) {
                simplex[dim] = xc;
                values[dim] = fc;
            } else {
                for (std::size_t v = 1; v <= dim; ++v) {
                    for (std::size_t d = 0; d < dim; ++d) simplex[v][d] = simplex[0][d] + 0.5 * (simplex[v][d] - simplex[0][d]);
                    values[v] = eval(simplex[v]).first;
                }
            }
        }
        sort_simplex();
    }

    std::vector<double> best = simplex[0];
    map_into_box(best, box);
    return {values[0], best, it, converged, evals};
}

}  // namespace

void map_into_box(std::span<double> x, std::span<const Interval> box) {
    for (std::size_t d = 0; d < x.size(); ++d) {
        const auto& iv = box[d];
        if (iv.periodic) {
            const double width = iv.hi - iv.lo;
            double t = std::fmod(x[d] - iv.lo, width);
            if (t < 0.0) t += width;
            x[d] = iv.lo + t;
        } else {
            x[d] = std::clamp(x[d], iv.lo, iv.hi);
        }
    }
}

MaximizeResult maximize(const Objective& f, std::span<const Interval> box, const OptimizerConfig& config) {
    config.validate();
    const std::size_t dim = box.size();
    if (dim == 0 || dim > 4) throw std::invalid_argument("maximize supports boxes of dimension 1 to 4");
    for (const auto& iv : box)
        if (!(iv.hi > iv.lo)) throw std::invalid_argument("maximize: empty interval in box");

    const auto axes = make_grid(box, config);
    const std::size_t n = static_cast<std::size_t>(config.grid_points_per_dim);
    std::size_t cells = 1;
    for (std::size_t d = 0; d < dim; ++d) cells *= n;

    auto grid_point = [&](std::size_t index) {
        std::vector<double> x(dim);
        for (std::size_t d = dim; d-- > 0;) {
            x[d] = axes[d].start + static_cast<double>(index % n) * axes[d].step;
            index /= n;
        }
        map_into_box(x, box);
        return x;
    };

    std::vector<double> grid_values(cells);
    parallel_for(cells, config.workers, [&](std::size_t i) { grid_values[i] = checked_eval(f, grid_point(i)); });

    // Grid indices are lexicographic in the point coordinates, so index order
    // breaks ties the same way as point order.
    std::vector<std::size_t> ranked(cells);
    std::iota(ranked.begin(), ranked.end(), 0);
    const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(config.multistart_count), cells);
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(starts), ranked.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (grid_values[a] != grid_values[b]) return grid_values[a] > grid_values[b];
                          return a < b;
                      });

    std::vector<double> steps(dim);
    for (std::size_t d = 0; d < dim; ++d)
        steps[d] = axes[d].step > 0.0 ? axes[d].step : 0.25 * (box[d].hi - box[d].lo);

    std::vector<NelderMeadOutcome> outcomes(starts);
    parallel_for(starts, config.workers, [&](std::size_t s) {
        const std::size_t cell = ranked[s];
        outcomes[s] = nelder_mead(f, box, grid_point(cell), grid_values[cell], steps, config);
    });

    MaximizeResult result;
    auto& diag = result.diagnostics;
    diag.grid_evaluations = cells;
    diag.function_evaluations = cells;
    diag.starts = static_cast<int>(starts);
    diag.best_grid_value = grid_values[ranked[0]];

    result.value = grid_values[ranked[0]];
    result.argmax = grid_point(ranked[0]);
    for (const auto& o : outcomes) {
        diag.function_evaluations += o.evaluations;
        diag.total_iterations += o.iterations;
        diag.optima.push_back({o.value, o.point, o.iterations, o.converged});
    }
    std::stable_sort(diag.optima.begin(), diag.optima.end(), [](const LocalOptimum& a, const LocalOptimum& b) {
        return better(a.value, a.point, b.value, b.point);
    });
    const auto& top = diag.optima.front();
    if (better(top.value, top.point, result.value, result.argmax)) {
        result.value = top.value;
        result.argmax = top.point;
    }
    diag.converged = top.converged;

    for (const auto& o : diag.optima) {
        double dist = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            double delta = std::abs(o.point[d] - result.argmax[d]);
            if (box[d].periodic) delta = std::min(delta, (box[d].hi - box[d].lo) - delta);
            dist = std::max(dist, delta);
        }
        if (dist > 1e-4) {
            diag.second_best_gap = result.value - o.value;
            break;
        }
    }
    return result;
}

double bisect_threshold(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("bisect_threshold: tolerance must be positive");
    if (!(hi > lo)) throw std::invalid_argument("bisect_threshold: need lo < hi");
    double glo = g(lo);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0))
        throw std::invalid_argument("bisect_threshold: no sign change between " + std::to_string(lo) + " and " +
                                    std::to_string(hi));
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace naqi
