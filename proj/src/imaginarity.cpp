#include "naqi/imaginarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace naqi {

std::string_view to_string(Measure m) { return m == Measure::L1 ? "l1" : "r"; }

Measure parse_measure(std::string_view tag) {
    if (tag == "l1" || tag == "L1") return Measure::L1;
    if (tag == "r" || tag == "relative-entropy" || tag == "rel") return Measure::RelativeEntropy;
    throw std::invalid_argument("unknown imaginarity measure '" + std::string(tag) + "' (expected l1 or r)");
}

namespace {

constexpr double kBasisTolerance = 1e-12;

cplx inner(const Spinor& a, const Spinor& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

}  // namespace

OrthonormalBasis::OrthonormalBasis(const Spinor& e0, const Spinor& e1) : vectors_{e0, e1} {
    const double d00 = std::abs(inner(e0, e0) - 1.0);
    const double d11 = std::abs(inner(e1, e1) - 1.0);
    const double d01 = std::abs(inner(e0, e1));
    if (std::max({d00, d11, d01}) > kBasisTolerance)
        throw std::invalid_argument("basis vectors are not orthonormal (defect " +
                                    std::to_string(std::max({d00, d11, d01})) + ")");
}

OrthonormalBasis OrthonormalBasis::computational() { return {{1.0, 0.0}, {0.0, 1.0}}; }

OrthonormalBasis OrthonormalBasis::pauli_x() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, h}, {h, -h}};
}

OrthonormalBasis OrthonormalBasis::pauli_y() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, cplx{0.0, h}}, {h, cplx{0.0, -h}}};
}

ComplexMatrix OrthonormalBasis::as_unitary() const {
    return ComplexMatrix(2, {vectors_[0][0], vectors_[1][0], vectors_[0][1], vectors_[1][1]});
}

Vec3 OrthonormalBasis::imaginarity_axis() const {
    Vec3 a;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto sv = pauli::sigma(k).apply(vectors_[1]);
        a[k] = inner(vectors_[0], {sv[0], sv[1]}).imag();
    }
    return a;
}

DensityMatrix real_part_map(const DensityMatrix& rho, const OrthonormalBasis& basis) {
    if (rho.dim() != 2) throw std::invalid_argument("real_part_map needs a qubit state");
    const ComplexMatrix u = basis.as_unitary();
    ComplexMatrix in_basis = u.adjoint() * rho.matrix() * u;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) in_basis(r, c) = in_basis(r, c).real();
    return DensityMatrix(u * in_basis * u.adjoint());
}

double imag_l1(const DensityMatrix& rho, const OrthonormalBasis& basis) {
    if (rho.dim() != 2) throw std::invalid_argument("imag_l1 needs a qubit state");
    const ComplexMatrix u = basis.as_unitary();
    const ComplexMatrix in_basis = u.adjoint() * rho.matrix() * u;
    double acc = 0.0;
    for (const auto& x : in_basis.data()) acc += std::abs(x.imag());
    return acc;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy argument outside [0, 1]");
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : hermitian_eigenvalues(rho.matrix())) {
        lambda = std::clamp(lambda, 0.0, 1.0);
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

namespace {

double clamp_nonnegative(double v) {
    if (v >= 0.0) return v;
    if (v >= -1e-9) return 0.0;
    throw std::runtime_error("relative entropy of imaginarity came out negative: " + std::to_string(v));
}

}  // namespace

double imag_rel_entropy(const DensityMatrix& rho, const OrthonormalBasis& basis) {
    return clamp_nonnegative(von_neumann_entropy(real_part_map(rho, basis)) - von_neumann_entropy(rho));
}

double imag_measure(Measure measure, const DensityMatrix& rho, const OrthonormalBasis& basis) {
    return measure == Measure::L1 ? imag_l1(rho, basis) : imag_rel_entropy(rho, basis);
}

double imag_l1_bloch(Vec3 n, Vec3 axis) { return std::abs(dot(n, axis)); }

double imag_rel_entropy_bloch(Vec3 n, Vec3 axis) {
    const double len = std::min(norm(n), 1.0);
    const Vec3 perp = n - dot(n, axis) * axis;
    const double perp_len = std::min(norm(perp), len);
    return clamp_nonnegative(binary_entropy(0.5 * (1.0 + perp_len)) - binary_entropy(0.5 * (1.0 + len)));
}

double imag_measure_bloch(Measure measure, Vec3 n, Vec3 axis) {
    return measure == Measure::L1 ? imag_l1_bloch(n, axis) : imag_rel_entropy_bloch(n, axis);
}

}  // namespace naqi
