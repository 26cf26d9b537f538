#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "naqi/frames.hpp"
#include "support.hpp"

using namespace naqi;
using testsupport::basis_of;
using testsupport::from_oracle;
using testsupport::random_state;
using testsupport::to_oracle;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("triples are mutually unbiased") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = mub_triple(th(rng), ph(rng), ph(rng));
        const auto check = check_mutually_unbiased(t.bases);
        CHECK(check.unbiased);
        CHECK(check.worst_defect < 1e-12);
    }
    const std::array<OrthonormalBasis, 3> same{OrthonormalBasis::computational(), OrthonormalBasis::computational(),
                                               OrthonormalBasis::pauli_x()};
    CHECK_FALSE(check_mutually_unbiased(same).unbiased);
}

TEST_CASE("imaginarity axes are orthogonal up to a shared line") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const auto axes = mub_triple(th(rng), ph(rng), ph(rng)).imaginarity_axes();
        CHECK(std::abs(std::abs(dot(axes[0], axes[1])) - 1.0) < 1e-12);
        CHECK(std::abs(dot(axes[0], axes[2])) < 1e-12);
        for (const auto& a : axes) CHECK(norm(a) == doctest::Approx(1.0));
    }
}

TEST_CASE("triple with zero angles is the Pauli eigenbasis triple") {
    const auto t = mub_triple(0.0, 0.0);
    const auto axes = t.imaginarity_axes();
    CHECK(std::abs(axes[0].y) == doctest::Approx(1.0));
    CHECK(std::abs(axes[1].y) == doctest::Approx(1.0));
    CHECK(std::abs(axes[2].x) == doctest::Approx(1.0));
}

TEST_CASE("bases agree with the oracle construction") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = th(rng), p = ph(rng);
        const auto lib = mub_triple(t, p);
        const auto pair = oracle::spin_pair(t, p);
        const auto ref = oracle::mub_from(pair[0], pair[1]);
        for (std::size_t i = 0; i < 3; ++i) CHECK(testsupport::max_diff(basis_of(lib.bases[i]), ref[i]) < 1e-14);
    }
}

TEST_CASE("chi shifted by pi gives the same imaginarity axes up to sign") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = th(rng), p = ph(rng), c = ph(rng);
        const auto a = mub_triple(t, p, c).imaginarity_axes();
        const auto b = mub_triple(t, p, c + kPi).imaginarity_axes();
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(std::abs(dot(a[i], b[i])) - 1.0) < 1e-12);
    }
}

TEST_CASE("projector pairs") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = th(rng), p = ph(rng);
        const auto pp = projector_pair(t, p);
        CHECK(max_abs_diff(pp.plus + pp.minus, ComplexMatrix::identity(2)) < 1e-15);
        CHECK(max_abs_diff(pp.plus * pp.plus, pp.plus) < 1e-15);
        CHECK(max_abs_diff(pp.plus * pp.minus, ComplexMatrix(2)) < 1e-15);
        CHECK(norm(density_to_bloch(DensityMatrix(pp.plus)) - pp.axis()) < 1e-14);
        CHECK(testsupport::max_diff(to_oracle(pp.plus), oracle::projector_along(t, p, true)) < 1e-15);
    }
}

TEST_CASE("conjugating a frame by a unitary") {
    std::mt19937_64 rng(36);
    const auto t = mub_triple(0.3, 1.1, 0.4);
    const ComplexMatrix v = from_oracle(oracle::random_unitary(2, rng));
    const auto moved = conjugate_frame(t, v);
    CHECK(check_mutually_unbiased(moved).unbiased);
    const DensityMatrix rho = random_state(2, rng);
    const DensityMatrix moved_rho(v * rho.matrix() * v.adjoint());
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(imag_l1(moved_rho, moved[i]) - imag_l1(rho, t.bases[i])) < 1e-12);
    ComplexMatrix not_unitary = ComplexMatrix::identity(2);
    not_unitary(0, 1) = 0.5;
    CHECK_THROWS_AS(conjugate_frame(t, not_unitary), std::invalid_argument);
}

TEST_CASE("non-finite angles rejected") {
    CHECK_THROWS_AS(mub_triple(std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(projector_pair(0.0, INFINITY), std::invalid_argument);
}
