#include "naqi/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "naqi/parallel.hpp"

namespace naqi {

namespace {

void require_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("family parameter p must lie in [0, 1], got " + std::to_string(p));
}

std::vector<cplx> bell_phi_plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return {h, 0.0, 0.0, h};
}

std::vector<cplx> bell_psi_plus() {
    const double h = 1.0 / std::sqrt(2.0);
    return {0.0, h, h, 0.0};
}

}  // namespace

DensityMatrix build_state(const StateFamily& family) {
    switch (family.kind) {
        case FamilyKind::BellMixture: {
            require_probability(family.p);
            ComplexMatrix m = cplx{family.p} * ComplexMatrix::projector(bell_phi_plus());
            m += cplx{1.0 - family.p} * ComplexMatrix::projector(bell_psi_plus());
            return DensityMatrix(m);
        }
        case FamilyKind::Werner: {
            require_probability(family.p);
            ComplexMatrix m = cplx{family.p} * ComplexMatrix::projector(bell_phi_plus());
            m += cplx{0.25 * (1.0 - family.p)} * ComplexMatrix::identity(4);
            return DensityMatrix(m);
        }
        case FamilyKind::ThreeQubitPure: {
            const auto& a = family.amplitudes;
            if (!(a.phi >= 0.0 && a.phi <= std::numbers::pi))
                throw std::invalid_argument("three-qubit phase phi must lie in [0, pi]");
            double n2 = 0.0;
            for (double l : a.lambda) n2 += l * l;
            if (std::abs(n2 - 1.0) > 1e-10)
                throw std::invalid_argument("three-qubit amplitudes are not normalized (sum of squares " +
                                            std::to_string(n2) + ")");
            std::vector<cplx> psi(8, 0.0);
            psi[0b000] = a.lambda[0];
            psi[0b100] = a.lambda[1] * std::polar(1.0, a.phi);
            psi[0b101] = a.lambda[2];
            psi[0b110] = a.lambda[3];
            psi[0b111] = a.lambda[4];
            return DensityMatrix(ComplexMatrix::projector(psi));
        }
    }
    throw std::invalid_argument("unknown state family");
}

ThreeQubitAmplitudes surface_family(double alpha, double beta) {
    return {{std::cos(alpha), 0.0, std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta), 0.0}, 0.0};
}

ThreeQubitAmplitudes line_family(double theta) {
    const double h = std::sqrt(2.0) / 2.0;
    return {{h, 0.0, h * std::cos(theta), h * std::sin(theta), 0.0}, 0.0};
}

namespace {

// Parallelism moves to the sweep level; each point runs single-threaded.
NaqiConfig per_point(const NaqiConfig& config) {
    NaqiConfig c = config;
    c.outer.workers = 1;
    c.inner.workers = 1;
    return c;
}

}  // namespace

std::vector<ScanPoint> scan_family(const FamilyTemplate& family, std::span<const double> grid, Measure measure,
                                   const NaqiConfig& config) {
    const NaqiConfig inner = per_point(config);
    std::vector<ScanPoint> points(grid.size());
    parallel_for(grid.size(), config.outer.workers, [&](std::size_t i) {
        const NaqiResult r = witness(build_state(family(grid[i])), measure, inner);
        points[i] = {grid[i], r.value, r.witness, r.verdict, r.diagnostics.certified};
    });
    return points;
}

double find_naqi_threshold(const FamilyTemplate& family, Measure measure, double lo, double hi,
                           const NaqiConfig& config, double tol) {
    const auto g = [&](double p) { return witness(build_state(family(p)), measure, config).witness; };
    return bisect_threshold(g, lo, hi, tol);
}

std::array<DensityMatrix, 3> ordered_pairs(const DensityMatrix& rho_abc, PairRoles roles) {
    if (rho_abc.dim() != 8) throw std::invalid_argument("ordered_pairs needs a three-qubit state");
    static constexpr std::array<std::size_t, 3> kDims{2, 2, 2};
    static constexpr std::array<std::size_t, 2> kPairDims{2, 2};
    static constexpr std::array<std::size_t, 2> kSwap{1, 0};
    static constexpr std::array<std::size_t, 2> kAB{0, 1}, kBC{1, 2}, kAC{0, 2};

    const ComplexMatrix ab = partial_trace(rho_abc.matrix(), kAB, kDims);
    const ComplexMatrix bc = partial_trace(rho_abc.matrix(), kBC, kDims);
    const ComplexMatrix ac = partial_trace(rho_abc.matrix(), kAC, kDims);
    const ComplexMatrix ca = permute_subsystems(ac, kSwap, kPairDims);
    if (roles == PairRoles::Forward) return {DensityMatrix(ab), DensityMatrix(bc), DensityMatrix(ca)};
    return {DensityMatrix(permute_subsystems(ab, kSwap, kPairDims)),
            DensityMatrix(permute_subsystems(bc, kSwap, kPairDims)), DensityMatrix(ac)};
}

ExclusionRecord exclusion_record(const ThreeQubitAmplitudes& amplitudes, std::vector<double> params, Measure measure,
                                 const NaqiConfig& config, PairRoles roles) {
    const auto pairs = ordered_pairs(build_state(StateFamily::three_qubit(amplitudes)), roles);
    ExclusionRecord rec{std::move(params), {}, 0};
    for (std::size_t k = 0; k < 3; ++k) {
        rec.pairs[k] = witness(pairs[k], measure, config);
        if (rec.pairs[k].verdict) ++rec.count_exceeding;
    }
    return rec;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n <= 0) throw std::invalid_argument("linspace needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

std::vector<ExclusionRecord> exclusion_scan_surface(int alpha_points, int beta_points, Measure measure,
                                                    const NaqiConfig& config, PairRoles roles) {
    const auto alphas = linspace(0.0, std::numbers::pi, alpha_points);
    const auto betas = linspace(0.0, 2.0 * std::numbers::pi, beta_points);
    const NaqiConfig inner = per_point(config);
    std::vector<ExclusionRecord> out(alphas.size() * betas.size());
    parallel_for(out.size(), config.outer.workers, [&](std::size_t i) {
        const double a = alphas[i / betas.size()], b = betas[i % betas.size()];
        out[i] = exclusion_record(surface_family(a, b), {a, b}, measure, inner, roles);
    });
    return out;
}

std::vector<ExclusionRecord> exclusion_scan_line(int theta_points, Measure measure, const NaqiConfig& config,
                                                 PairRoles roles) {
    const auto thetas = linspace(0.0, 2.0 * std::numbers::pi, theta_points);
    const NaqiConfig inner = per_point(config);
    std::vector<ExclusionRecord> out(thetas.size());
    parallel_for(out.size(), config.outer.workers, [&](std::size_t i) {
        out[i] = exclusion_record(line_family(thetas[i]), {thetas[i]}, measure, inner, roles);
    });
    return out;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

void write_scan_csv(std::ostream& out, std::span<const ScanPoint> points) {
    out << "param,N,witness,verdict\n";
    for (const auto& p : points)
        out << num(p.param) << ',' << num(p.value) << ',' << num(p.witness) << ',' << (p.verdict ? "true" : "false")
            << '\n';
}

void write_exclusion_csv(std::ostream& out, std::span<const ExclusionRecord> records) {
    const bool surface = !records.empty() && records.front().params.size() == 2;
    out << (surface ? "alpha,beta," : "theta,") << "N_AB,N_BC,N_CA,count_exceeding\n";
    for (const auto& r : records) {
        for (double p : r.params) out << num(p) << ',';
        for (const auto& pr : r.pairs) out << num(pr.value) << ',';
        out << r.count_exceeding << '\n';
    }
}

}  // namespace naqi
