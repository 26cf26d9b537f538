#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "naqi/qmat.hpp"
#include "support.hpp"

using namespace naqi;
using testsupport::from_oracle;
using testsupport::max_diff;
using testsupport::to_oracle;

TEST_CASE("tensor matches the index formula") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_unitary(2, rng);
        const auto b = oracle::random_mixed(4, rng);
        const ComplexMatrix lib = tensor(from_oracle(a), from_oracle(b));
        CHECK(max_diff(to_oracle(lib), oracle::kron(a, b)) < 1e-14);
    }
    CHECK_THROWS_AS(tensor(ComplexMatrix::identity(4), ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("partial trace matches explicit contraction") {
    std::mt19937_64 rng(12);
    const std::array<std::size_t, 3> dims{2, 2, 2};
    for (int trial = 0; trial < 10; ++trial) {
        const auto rho = oracle::random_mixed(8, rng);
        const ComplexMatrix m = from_oracle(rho);
        const std::array<std::size_t, 2> ab{0, 1}, bc{1, 2}, ac{0, 2};
        const std::array<std::size_t, 1> a{0}, b{1}, c{2};
        CHECK(max_diff(to_oracle(partial_trace(m, ab, dims)), oracle::trace_out(rho, 3, 0b011)) < 1e-14);
        CHECK(max_diff(to_oracle(partial_trace(m, bc, dims)), oracle::trace_out(rho, 3, 0b110)) < 1e-14);
        CHECK(max_diff(to_oracle(partial_trace(m, ac, dims)), oracle::trace_out(rho, 3, 0b101)) < 1e-14);
        CHECK(max_diff(to_oracle(partial_trace(m, a, dims)), oracle::trace_out(rho, 3, 0b001)) < 1e-14);
        CHECK(max_diff(to_oracle(partial_trace(m, b, dims)), oracle::trace_out(rho, 3, 0b010)) < 1e-14);
        CHECK(max_diff(to_oracle(partial_trace(m, c, dims)), oracle::trace_out(rho, 3, 0b100)) < 1e-14);
    }
}

TEST_CASE("partial trace of a product returns the factors") {
    std::mt19937_64 rng(13);
    const DensityMatrix a(from_oracle(oracle::random_mixed(2, rng)));
    const DensityMatrix b(from_oracle(oracle::random_mixed(4, rng)));
    const DensityMatrix ab = tensor(a, b);
    const std::array<std::size_t, 2> dims{2, 4};
    const std::array<std::size_t, 1> keep_a{0}, keep_b{1};
    CHECK(max_abs_diff(partial_trace(ab, keep_a, dims).matrix(), a.matrix()) < 1e-14);
    CHECK(max_abs_diff(partial_trace(ab, keep_b, dims).matrix(), b.matrix()) < 1e-14);
}

TEST_CASE("swapping two qubits") {
    std::mt19937_64 rng(14);
    const auto rho = oracle::random_mixed(4, rng);
    const std::array<std::size_t, 2> dims{2, 2}, order{1, 0};
    CHECK(max_diff(to_oracle(permute_subsystems(from_oracle(rho), order, dims)), oracle::swap_two_qubits(rho)) < 1e-15);

    const auto x = oracle::random_mixed(2, rng), y = oracle::random_mixed(2, rng);
    const ComplexMatrix xy = tensor(from_oracle(x), from_oracle(y));
    CHECK(max_diff(to_oracle(permute_subsystems(xy, order, dims)), oracle::kron(y, x)) < 1e-15);
}

TEST_CASE("eigenvalues agree with characteristic polynomial roots") {
    std::mt19937_64 rng(15);
    for (std::size_t dim : {2u, 4u, 8u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto rho = oracle::random_mixed(dim, rng);
            const auto lib = hermitian_eigenvalues(from_oracle(rho));
            const auto ref = oracle::eigenvalues(rho);
            REQUIRE(lib.size() == dim);
            for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(lib[k] - ref[k]) < 1e-10);
        }
    }
}

TEST_CASE("eigenvalues of degenerate and diagonal matrices") {
    const auto ev = hermitian_eigenvalues(ComplexMatrix::identity(4));
    for (double l : ev) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));
    const std::array<double, 4> d{0.1, 0.4, 0.2, 0.3};
    const auto ev2 = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(ev2[0] == doctest::Approx(0.4));
    CHECK(ev2[3] == doctest::Approx(0.1));
    ComplexMatrix bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("state validation") {
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(2));
    CHECK_NOTHROW(DensityMatrix::maximally_mixed(8));
    CHECK_THROWS_AS(DensityMatrix(cplx{1.0 / 3.0} * ComplexMatrix::identity(3)), InvalidState);

    ComplexMatrix not_unit = ComplexMatrix::identity(2);
    CHECK_THROWS_AS(DensityMatrix{not_unit}, InvalidState);

    ComplexMatrix negative(2, {cplx{1.2}, 0.0, 0.0, cplx{-0.2}});
    const auto diag = validate_state(negative);
    CHECK_FALSE(diag.passes);
    CHECK(diag.min_eigenvalue == doctest::Approx(-0.2));
    CHECK_THROWS_AS(DensityMatrix{negative}, InvalidState);

    ComplexMatrix non_hermitian(2, {cplx{0.5}, cplx{0.1}, cplx{0.3}, cplx{0.5}});
    CHECK(validate_state(non_hermitian).hermiticity_defect == doctest::Approx(0.2));
    try {
        DensityMatrix{non_hermitian};
        FAIL("accepted a non-Hermitian matrix");
    } catch (const InvalidState& e) {
        CHECK(std::string(e.what()).find("hermiticity") != std::string::npos);
    }
}

TEST_CASE("Bloch round trip") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> u(-0.57, 0.57);
    for (int trial = 0; trial < 50; ++trial) {
        const Vec3 n{u(rng), u(rng), u(rng)};
        const Vec3 back = density_to_bloch(bloch_to_density(n));
        CHECK(norm(back - n) < 1e-15);
        CHECK(max_diff(to_oracle(bloch_to_density(n).matrix()), oracle::bloch_state(n.x, n.y, n.z)) < 1e-15);
    }
    CHECK_THROWS_AS(bloch_to_density({0.8, 0.8, 0.0}), InvalidState);
    CHECK_NOTHROW(bloch_to_density({0.0, 0.0, 1.0 + 1e-12}));
}

TEST_CASE("Pauli decomposition reconstructs the state") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho(from_oracle(oracle::random_mixed(4, rng)));
        const auto form = pauli_decompose(rho);
        CHECK(max_abs_diff(form.reconstruct(), rho.matrix()) < 1e-14);
    }
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> phi{h, 0.0, 0.0, h};
    const auto form = pauli_decompose(DensityMatrix::pure(phi));
    CHECK(norm(form.r) < 1e-15);
    CHECK(norm(form.s) < 1e-15);
    CHECK(form.t(0, 0) == doctest::Approx(1.0));
    CHECK(form.t(1, 1) == doctest::Approx(-1.0));
    CHECK(form.t(2, 2) == doctest::Approx(1.0));
}
