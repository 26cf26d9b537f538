// qmat.hpp
// Small dense complex matrices for 1-3 qubit density matrices.
//
// Everything here is sized for dim <= 8. Composite systems are ordered
// A (x) B (x) C with lexicographic labels |000>, |001>, ..., |111>.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace naqi {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;

/// Thrown when a matrix fails the density-matrix invariants.
class InvalidState : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](std::size_t k) const { return k == 0 ? x : (k == 1 ? y : z); }
    double& operator[](std::size_t k) { return k == 0 ? x : (k == 1 ? y : z); }

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm(Vec3 a);

/// Row-major 3x3 real matrix, used for two-qubit correlation tensors.
struct Mat3 {
    std::array<double, 9> m{};

    double operator()(std::size_t r, std::size_t c) const { return m[3 * r + c]; }
    double& operator()(std::size_t r, std::size_t c) { return m[3 * r + c]; }

    Vec3 apply(Vec3 v) const;            // M v
    Vec3 apply_transpose(Vec3 v) const;  // M^T v
    static Mat3 diag(double a, double b, double c);
};

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> entries);
    /// |v><w|
    static ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> w);
    static ComplexMatrix projector(std::span<const cplx> v) { return outer(v, v); }

    std::size_t dim() const { return dim_; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    std::span<const cplx> data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    /// M v
    std::vector<cplx> apply(std::span<const cplx> v) const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Largest entrywise |a - b|. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |M[a][b] - conj(M[b][a])|
double hermiticity_defect(const ComplexMatrix& m);
/// max |(U U^dagger - I)[a][b]|
double unitarity_defect(const ComplexMatrix& u);

/// U rho U^dagger
ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u);

namespace pauli {
const ComplexMatrix& identity();
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
/// sigma_k for k in {0,1,2} = {x,y,z}
const ComplexMatrix& sigma(std::size_t k);
}  // namespace pauli

/// Kronecker product. Rejects results larger than kMaxDim.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

struct StateDiagnostics {
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    bool passes = false;

    std::string describe() const;
};

inline constexpr double kStateTolerance = 1e-9;

StateDiagnostics validate_state(const ComplexMatrix& m);

/// Hermitian, unit-trace, positive-semidefinite matrix of dim 2, 4 or 8.
/// The input is symmetrized once, (M + M^dagger)/2, and then validated.
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& m);

    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix pure(std::span<const cplx> psi);

    std::size_t dim() const { return m_.dim(); }
    const ComplexMatrix& matrix() const { return m_; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    ComplexMatrix m_;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Trace out every subsystem not listed in `keep`. Kept subsystems stay in
/// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

/// Reorder subsystems: output subsystem k is input subsystem order[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims);
DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims);

// Qubit <-> Bloch sphere.

using BlochVector = Vec3;

inline constexpr double kBlochTolerance = 1e-9;

DensityMatrix bloch_to_density(BlochVector n);
BlochVector density_to_bloch(const DensityMatrix& rho);
/// Same as density_to_bloch, without requiring a valid state.
Vec3 bloch_components(const ComplexMatrix& m);

/// rho_AB = 1/4 (I(x)I + r.sigma(x)I + I(x)s.sigma + sum_jk T_jk sigma_j(x)sigma_k)
struct TwoQubitPauliForm {
    Vec3 r;  // Alice's local Bloch vector
    Vec3 s;  // Bob's local Bloch vector
    Mat3 t;  // correlations T_jk = Tr(rho sigma_j (x) sigma_k)

    ComplexMatrix reconstruct() const;
};

TwoQubitPauliForm pauli_decompose(const DensityMatrix& rho_ab);

/// Eigenvalues of a Hermitian matrix, descending. 2x2 uses the closed form,
/// larger sizes cyclic complex Jacobi rotations.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

}  // namespace naqi
