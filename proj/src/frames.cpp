#include "naqi/frames.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace naqi {

Spinor spinor_plus(double theta, double phi) {
    const cplx e = std::polar(1.0, phi);
    return {std::cos(0.5 * theta), e * std::sin(0.5 * theta)};
}

Spinor spinor_minus(double theta, double phi) {
    const cplx e = std::polar(1.0, phi);
    return {std::sin(0.5 * theta), -e * std::cos(0.5 * theta)};
}

Vec3 bloch_axis(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

namespace {

Spinor combine(const Spinor& a, cplx ca, const Spinor& b, cplx cb) {
    return {ca * a[0] + cb * b[0], ca * a[1] + cb * b[1]};
}

}  // namespace

MubTriple mub_triple(double theta1, double phi1, double chi) {
    if (!std::isfinite(theta1) || !std::isfinite(phi1) || !std::isfinite(chi))
        throw std::invalid_argument("MUB angles must be finite");
    const Spinor p = spinor_plus(theta1, phi1);
    const Spinor m0 = spinor_minus(theta1, phi1);
    const cplx rot = std::polar(1.0, chi);
    const Spinor m = {rot * m0[0], rot * m0[1]};

    const double h = 1.0 / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    return MubTriple{theta1,
                     phi1,
                     chi,
                     {OrthonormalBasis(p, m),
                      OrthonormalBasis(combine(p, h, m, h), combine(p, h, m, -h)),
                      OrthonormalBasis(combine(p, h, m, h * i), combine(p, h, m, -h * i))}};
}

std::array<Vec3, 3> MubTriple::imaginarity_axes() const {
    return {bases[0].imaginarity_axis(), bases[1].imaginarity_axis(), bases[2].imaginarity_axis()};
}

ProjectorPair projector_pair(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("measurement angles must be finite");
    const Spinor p = spinor_plus(theta, phi);
    const Spinor m = spinor_minus(theta, phi);
    return {{theta, phi}, ComplexMatrix::projector(p), ComplexMatrix::projector(m)};
}

MeasurementSet measurement_set(const std::array<SphericalAngles, 3>& angles) {
    return {angles,
            {projector_pair(angles[0].theta, angles[0].phi), projector_pair(angles[1].theta, angles[1].phi),
             projector_pair(angles[2].theta, angles[2].phi)}};
}

MubCheck check_mutually_unbiased(const std::array<OrthonormalBasis, 3>& bases, double tol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b) {
                    const Spinor& u = bases[i][a];
                    const Spinor& v = bases[j][b];
                    const cplx ov = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
                    worst = std::max(worst, std::abs(std::norm(ov) - 0.5));
                }
    return {worst <= tol, worst};
}

std::array<OrthonormalBasis, 3> conjugate_frame(const MubTriple& m, const ComplexMatrix& v) {
    if (v.dim() != 2) throw std::invalid_argument("conjugate_frame needs a 2x2 unitary");
    const double defect = unitarity_defect(v);
    if (defect > 1e-10) throw std::invalid_argument("conjugate_frame: matrix is not unitary (defect " +
                                                    std::to_string(defect) + ")");
    auto map_basis = [&](const OrthonormalBasis& b) {
        auto e0 = v.apply(b[0]);
        auto e1 = v.apply(b[1]);
        // Remove the O(defect) non-orthogonality; phases are untouched.
        const double n0 = std::sqrt(std::norm(e0[0]) + std::norm(e0[1]));
        e0[0] /= n0;
        e0[1] /= n0;
        const cplx ov = std::conj(e0[0]) * e1[0] + std::conj(e0[1]) * e1[1];
        e1[0] -= ov * e0[0];
        e1[1] -= ov * e0[1];
        const double n1 = std::sqrt(std::norm(e1[0]) + std::norm(e1[1]));
        e1[0] /= n1;
        e1[1] /= n1;
        return OrthonormalBasis({e0[0], e0[1]}, {e1[0], e1[1]});
    };
    return {map_basis(m.bases[0]), map_basis(m.bases[1]), map_basis(m.bases[2])};
}

}  // namespace naqi
