#include "naqi/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace naqi {

double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 Mat3::apply(Vec3 v) const {
    Vec3 out;
    for (std::size_t r = 0; r < 3; ++r) out[r] = (*this)(r, 0) * v.x + (*this)(r, 1) * v.y + (*this)(r, 2) * v.z;
    return out;
}

Vec3 Mat3::apply_transpose(Vec3 v) const {
    Vec3 out;
    for (std::size_t c = 0; c < 3; ++c) out[c] = (*this)(0, c) * v.x + (*this)(1, c) * v.y + (*this)(2, c) * v.z;
    return out;
}

Mat3 Mat3::diag(double a, double b, double c) {
    Mat3 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    return m;
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("matrix dimension must be in [1, 8]");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major) : dim_(dim), data_(std::move(row_major)) {
    if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("matrix dimension must be in [1, 8]");
    if (data_.size() != dim * dim) throw std::invalid_argument("entry count does not match dim*dim");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v, std::span<const cplx> w) {
    if (v.size() != w.size()) throw std::invalid_argument("outer: vector sizes differ");
    ComplexMatrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < w.size(); ++c) m(r, c) = v[r] * std::conj(w[c]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in *");
    const std::size_t d = a.dim();
    ComplexMatrix out(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> v) const {
    if (v.size() != dim_) throw std::invalid_argument("apply: vector size mismatch");
    std::vector<cplx> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = r; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
    return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim()));
}

ComplexMatrix conjugate(const ComplexMatrix& rho, const ComplexMatrix& u) { return u * rho * u.adjoint(); }

namespace pauli {
const ComplexMatrix& identity() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}
const ComplexMatrix& x() {
    static const ComplexMatrix m(2, {0.0, 1.0, 1.0, 0.0});
    return m;
}
const ComplexMatrix& y() {
    static const ComplexMatrix m(2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0});
    return m;
}
const ComplexMatrix& z() {
    static const ComplexMatrix m(2, {1.0, 0.0, 0.0, -1.0});
    return m;
}
const ComplexMatrix& sigma(std::size_t k) {
    switch (k) {
        case 0: return x();
        case 1: return y();
        case 2: return z();
        default: throw std::out_of_range("Pauli index must be 0, 1 or 2");
    }
}
}  // namespace pauli

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t d = a.dim() * b.dim();
    if (d > kMaxDim) throw std::invalid_argument("tensor product would exceed dimension 8");
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k)
                for (std::size_t l = 0; l < b.dim(); ++l) out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    return out;
}

// ---------------------------------------------------------------------------
// Validation and DensityMatrix

namespace {

bool allowed_state_dim(std::size_t d) { return d == 2 || d == 4 || d == 8; }

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    ComplexMatrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

}  // namespace

std::string StateDiagnostics::describe() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "hermiticity defect %.3e, trace defect %.3e, min eigenvalue %.3e (%s)",
                  hermiticity_defect, trace_defect, min_eigenvalue, passes ? "valid" : "invalid");
    return buf;
}

StateDiagnostics validate_state(const ComplexMatrix& m) {
    StateDiagnostics d;
    d.hermiticity_defect = hermiticity_defect(m);
    d.trace_defect = std::abs(m.trace() - 1.0);
    d.min_eigenvalue = hermitian_eigenvalues(symmetrized(m)).back();
    d.passes = allowed_state_dim(m.dim()) && d.hermiticity_defect <= kStateTolerance &&
               d.trace_defect <= kStateTolerance && d.min_eigenvalue >= -kStateTolerance;
    return d;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
    if (!allowed_state_dim(m.dim()))
        throw InvalidState("density matrix dimension must be 2, 4 or 8, got " + std::to_string(m.dim()));
    const StateDiagnostics d = validate_state(m);
    if (!d.passes) throw InvalidState("not a density matrix: " + d.describe());
    m_ = symmetrized(m);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
    double n2 = 0.0;
    for (const auto& a : psi) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-10) throw InvalidState("state vector is not normalized");
    return DensityMatrix(ComplexMatrix::projector(psi));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Subsystem bookkeeping

namespace {

std::size_t checked_total(std::span<const std::size_t> dims, std::size_t expected) {
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
        total *= d;
    }
    if (total != expected)
        throw std::invalid_argument("subsystem dimensions multiply to " + std::to_string(total) +
                                    ", matrix has dim " + std::to_string(expected));
    return total;
}

// Mixed-radix digits of `index`, most significant subsystem first.
void to_digits(std::size_t index, std::span<const std::size_t> dims, std::span<std::size_t> digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    const std::size_t total = checked_total(dims, m.dim());
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) throw std::invalid_argument("partial_trace: subsystem index out of range");
        if (kept[k]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }

    std::size_t out_dim = 1;
    std::vector<std::size_t> kept_dims;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (kept[k]) {
            out_dim *= dims[k];
            kept_dims.push_back(dims[k]);
        }

    std::vector<std::size_t> di(dims.size()), dj(dims.size());
    auto reduced_index = [&](const std::vector<std::size_t>& digits) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (kept[k]) idx = idx * dims[k] + digits[k];
        return idx;
    };

    ComplexMatrix out(out_dim);
    for (std::size_t i = 0; i < total; ++i) {
        to_digits(i, dims, di);
        for (std::size_t j = 0; j < total; ++j) {
            to_digits(j, dims, dj);
            bool same_traced = true;
            for (std::size_t k = 0; k < dims.size() && same_traced; ++k)
                if (!kept[k] && di[k] != dj[k]) same_traced = false;
            if (same_traced) out(reduced_index(di), reduced_index(dj)) += m(i, j);
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    return DensityMatrix(partial_trace(rho.matrix(), keep, dims));
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims) {
    const std::size_t total = checked_total(dims, m.dim());
    if (order.size() != dims.size()) throw std::invalid_argument("permutation length must match subsystem count");
    std::vector<bool> seen(dims.size(), false);
    for (auto o : order) {
        if (o >= dims.size() || seen[o]) throw std::invalid_argument("invalid subsystem permutation");
        seen[o] = true;
    }

    std::vector<std::size_t> digits(dims.size());
    std::vector<std::size_t> mapped(total);
    for (std::size_t i = 0; i < total; ++i) {
        to_digits(i, dims, digits);
        std::size_t idx = 0;
        for (std::size_t k = 0; k < order.size(); ++k) idx = idx * dims[order[k]] + digits[order[k]];
        mapped[i] = idx;
    }
    ComplexMatrix out(total);
    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) out(mapped[i], mapped[j]) = m(i, j);
    return out;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const std::size_t> order,
                                 std::span<const std::size_t> dims) {
    return DensityMatrix(permute_subsystems(rho.matrix(), order, dims));
}

// ---------------------------------------------------------------------------
// Bloch and Pauli forms

DensityMatrix bloch_to_density(BlochVector n) {
    const double len2 = dot(n, n);
    if (len2 > (1.0 + kBlochTolerance) * (1.0 + kBlochTolerance))
        throw InvalidState("Bloch vector length " + std::to_string(std::sqrt(len2)) + " exceeds 1");
    ComplexMatrix m(2, {0.5 * (1.0 + n.z), 0.5 * cplx{n.x, -n.y}, 0.5 * cplx{n.x, n.y}, 0.5 * (1.0 - n.z)});
    if (len2 > 1.0) {
        // Inside tolerance but slightly outside the ball: scale back onto the sphere.
        const double s = 1.0 / std::sqrt(len2);
        m = ComplexMatrix(2, {0.5 * (1.0 + s * n.z), 0.5 * s * cplx{n.x, -n.y}, 0.5 * s * cplx{n.x, n.y},
                              0.5 * (1.0 - s * n.z)});
    }
    return DensityMatrix(m);
}

Vec3 bloch_components(const ComplexMatrix& m) {
    if (m.dim() != 2) throw std::invalid_argument("Bloch vector needs a 2x2 matrix");
    // Tr(rho sigma_x) = 2 Re rho_10, Tr(rho sigma_y) = 2 Im rho_10, Tr(rho sigma_z) = rho_00 - rho_11
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector density_to_bloch(const DensityMatrix& rho) { return bloch_components(rho.matrix()); }

TwoQubitPauliForm pauli_decompose(const DensityMatrix& rho_ab) {
    if (rho_ab.dim() != 4) throw std::invalid_argument("pauli_decompose needs a two-qubit state");
    const ComplexMatrix& m = rho_ab.matrix();
    auto expect = [&](const ComplexMatrix& op) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) acc += (m(i, k) * op(k, i)).real();
        return acc;
    };
    TwoQubitPauliForm f;
    for (std::size_t j = 0; j < 3; ++j) {
        f.r[j] = expect(tensor(pauli::sigma(j), pauli::identity()));
        f.s[j] = expect(tensor(pauli::identity(), pauli::sigma(j)));
        for (std::size_t k = 0; k < 3; ++k) f.t(j, k) = expect(tensor(pauli::sigma(j), pauli::sigma(k)));
    }
    return f;
}

ComplexMatrix TwoQubitPauliForm::reconstruct() const {
    ComplexMatrix m = ComplexMatrix::identity(4);
    for (std::size_t j = 0; j < 3; ++j) {
        m += cplx{r[j]} * tensor(pauli::sigma(j), pauli::identity());
        m += cplx{s[j]} * tensor(pauli::identity(), pauli::sigma(j));
        for (std::size_t k = 0; k < 3; ++k) m += cplx{t(j, k)} * tensor(pauli::sigma(j), pauli::sigma(k));
    }
    m *= 0.25;
    return m;
}

// ---------------------------------------------------------------------------
// Eigenvalues

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) acc += std::norm(a(r, c));
    return std::sqrt(acc);
}

// One complex Jacobi rotation zeroing a(p,q). G = diag(1, conj(e)) J with J the
// real Jacobi rotation for [[a_pp, |a_pq|], [|a_pq|, a_qq]], applied as G^dagger A G.
void jacobi_rotate(ComplexMatrix& a, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx e = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const cplx gpp = c, gpq = s, gqp = -s * std::conj(e), gqq = c * std::conj(e);
    const std::size_t d = a.dim();
    for (std::size_t k = 0; k < d; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (std::size_t k = 0; k < d; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    if (hermiticity_defect(h) > kStateTolerance)
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                                    std::to_string(hermiticity_defect(h)) + ")");
    const std::size_t d = h.dim();
    std::vector<double> ev;
    if (d == 1) {
        ev.push_back(h(0, 0).real());
    } else if (d == 2) {
        const double a = h(0, 0).real(), b = h(1, 1).real();
        const double mean = 0.5 * (a + b);
        const double half_gap = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(h(0, 1)));
        ev = {mean + half_gap, mean - half_gap};
    } else {
        ComplexMatrix a = symmetrized(h);
        constexpr int kMaxSweeps = 100;
        for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > 1e-12; ++sweep)
            for (std::size_t p = 0; p + 1 < d; ++p)
                for (std::size_t q = p + 1; q < d; ++q) jacobi_rotate(a, p, q);
        if (off_diagonal_norm(a) > 1e-12) throw std::runtime_error("Jacobi diagonalization did not converge");
        for (std::size_t i = 0; i < d; ++i) ev.push_back(a(i, i).real());
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

}  // namespace naqi
