// frames.hpp
// Parametrized triples of mutually unbiased qubit bases and rank-1 projective
// measurements, built from the spinor
//     |+(theta, phi)> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
//     |-(theta, phi)> = sin(theta/2)|0> - e^{i phi} cos(theta/2)|1>
//
// A triple is M1 = {|+>, e^{i chi}|->}, M2 = {(M1+ +- M1-)/sqrt2},
// M3 = {(M1+ +- i M1-)/sqrt2}. With chi = 0 this is the two-angle family;
// letting chi vary reaches every unitary image V M V^dagger of the Pauli
// eigenbasis triple.

#pragma once

#include <array>

#include "naqi/imaginarity.hpp"
#include "naqi/qmat.hpp"

namespace naqi {

struct SphericalAngles {
    double theta = 0.0;
    double phi = 0.0;

    friend bool operator==(const SphericalAngles&, const SphericalAngles&) = default;
};

Spinor spinor_plus(double theta, double phi);
Spinor spinor_minus(double theta, double phi);
/// Unit vector (sin t cos p, sin t sin p, cos t).
Vec3 bloch_axis(double theta, double phi);

struct MubTriple {
    double theta1 = 0.0;
    double phi1 = 0.0;
    double chi = 0.0;
    std::array<OrthonormalBasis, 3> bases;

    std::array<Vec3, 3> imaginarity_axes() const;
};

MubTriple mub_triple(double theta1, double phi1, double chi = 0.0);

struct ProjectorPair {
    SphericalAngles angles;
    ComplexMatrix plus;
    ComplexMatrix minus;

    /// Bloch axis of `plus`.
    Vec3 axis() const { return bloch_axis(angles.theta, angles.phi); }
};

ProjectorPair projector_pair(double theta, double phi);

struct MeasurementSet {
    std::array<SphericalAngles, 3> angles;
    std::array<ProjectorPair, 3> projectors;
};

MeasurementSet measurement_set(const std::array<SphericalAngles, 3>& angles);

struct MubCheck {
    bool unbiased = false;
    double worst_defect = 0.0;  // max | |<e_i^a|e_j^b>|^2 - 1/2 |
};

MubCheck check_mutually_unbiased(const std::array<OrthonormalBasis, 3>& bases, double tol = 1e-10);

/// Maps every basis vector through `v`. Throws std::invalid_argument unless v
/// is unitary within 1e-10.
std::array<OrthonormalBasis, 3> conjugate_frame(const MubTriple& m, const ComplexMatrix& v);

}  // namespace naqi
