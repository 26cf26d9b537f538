// imaginarity.hpp
// l1-norm and relative-entropy imaginarity of qubit states in an arbitrary
// orthonormal reference basis.

#pragma once

#include <array>
#include <string_view>

#include "naqi/qmat.hpp"

namespace naqi {

enum class Measure { L1, RelativeEntropy };

std::string_view to_string(Measure m);
/// Accepts "l1" and "r" (also "relative-entropy"). Throws std::invalid_argument.
Measure parse_measure(std::string_view tag);

using Spinor = std::array<cplx, 2>;

/// Two orthonormal qubit vectors. Vector phases are part of the value: the
/// imaginarity of a state depends on them, so nothing here rescales phases.
class OrthonormalBasis {
public:
    OrthonormalBasis(const Spinor& e0, const Spinor& e1);

    static OrthonormalBasis computational();
    static OrthonormalBasis pauli_x();
    static OrthonormalBasis pauli_y();

    const Spinor& operator[](std::size_t a) const { return vectors_[a]; }

    /// Columns are the basis vectors.
    ComplexMatrix as_unitary() const;

    /// Unit vector a with Im<e0|rho|e1> = (n.a)/2 for rho with Bloch vector n.
    /// The imaginary part of rho in this basis is exactly its component along a.
    Vec3 imaginarity_axis() const;

private:
    std::array<Spinor, 2> vectors_;
};

/// rho in `basis` with every entry replaced by its real part, mapped back to
/// the computational basis; equals (rho + rho^T)/2 with T taken in `basis`.
DensityMatrix real_part_map(const DensityMatrix& rho, const OrthonormalBasis& basis);

double imag_l1(const DensityMatrix& rho, const OrthonormalBasis& basis);

/// -x log2 x - (1-x) log2(1-x); throws std::domain_error outside [0, 1].
double binary_entropy(double x);

/// Base-2 von Neumann entropy. Eigenvalues are clamped into [0, 1].
double von_neumann_entropy(const DensityMatrix& rho);

/// S(real_part_map(rho)) - S(rho). Round-off in [-1e-9, 0) is clamped to 0,
/// anything more negative throws std::runtime_error.
double imag_rel_entropy(const DensityMatrix& rho, const OrthonormalBasis& basis);

double imag_measure(Measure measure, const DensityMatrix& rho, const OrthonormalBasis& basis);

// Bloch-vector forms. With a = basis.imaginarity_axis():
//   l1 = |n.a|,   relative entropy = H((1 + |n - (n.a)a|)/2) - H((1 + |n|)/2).
// These are the hot path of the NAQI optimizer; the matrix forms above are
// the reference they are tested against.

double imag_l1_bloch(Vec3 n, Vec3 axis);
double imag_rel_entropy_bloch(Vec3 n, Vec3 axis);
double imag_measure_bloch(Measure measure, Vec3 n, Vec3 axis);

}  // namespace naqi
