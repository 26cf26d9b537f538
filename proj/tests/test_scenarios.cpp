#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "naqi/scenarios.hpp"
#include "support.hpp"

using namespace naqi;
using testsupport::from_oracle;
using testsupport::to_oracle;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt5 = std::sqrt(5.0);

}  // namespace

TEST_CASE("family states") {
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> phi{h, 0.0, 0.0, h};
    CHECK(max_abs_diff(build_state(StateFamily::werner(1.0)).matrix(), DensityMatrix::pure(phi).matrix()) < 1e-15);
    CHECK(max_abs_diff(build_state(StateFamily::werner(0.0)).matrix(), DensityMatrix::maximally_mixed(4).matrix()) < 1e-15);

    ThreeQubitAmplitudes a;
    const auto zero = build_state(StateFamily::three_qubit(a));
    CHECK(zero(0, 0) == cplx{1.0});
    CHECK(std::abs(zero.matrix().trace() - cplx{1.0}) < 1e-15);

    const auto half = pauli_decompose(build_state(StateFamily::bell_mixture(0.5)));
    CHECK(half.t(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(half.t(1, 1)) < 1e-15);
    CHECK(std::abs(half.t(2, 2)) < 1e-15);
    for (double p : {0.0, 0.2, 0.7, 1.0}) {
        const auto f = pauli_decompose(build_state(StateFamily::bell_mixture(p)));
        CHECK(f.t(1, 1) == doctest::Approx(1 - 2 * p));
        CHECK(f.t(2, 2) == doctest::Approx(2 * p - 1));
        CHECK(norm(f.r) < 1e-15);
        CHECK(norm(f.s) < 1e-15);
    }
}

TEST_CASE("three-qubit amplitudes") {
    ThreeQubitAmplitudes a{{0.5, 0.5, 0.5, 0.5, 0.0}, 0.3};
    const auto rho = build_state(StateFamily::three_qubit(a));
    CHECK(std::abs(rho(0b100, 0b000) - 0.25 * std::polar(1.0, 0.3)) < 1e-15);
    CHECK(rho(0b101, 0b110) == cplx{0.25});

    // Signed amplitudes from the surface family are accepted.
    CHECK_NOTHROW(build_state(StateFamily::three_qubit(surface_family(2.5, 4.0))));
    CHECK_NOTHROW(build_state(StateFamily::three_qubit(line_family(5.0))));
}

TEST_CASE("domain violations") {
    CHECK_THROWS_AS(build_state(StateFamily::werner(1.1)), std::invalid_argument);
    CHECK_THROWS_AS(build_state(StateFamily::bell_mixture(-0.01)), std::invalid_argument);
    CHECK_THROWS_AS(build_state(StateFamily::werner(std::nan(""))), std::invalid_argument);
    ThreeQubitAmplitudes unnormalized{{1.0, 0.1, 0.0, 0.0, 0.0}, 0.0};
    CHECK_THROWS_AS(build_state(StateFamily::three_qubit(unnormalized)), std::invalid_argument);
    ThreeQubitAmplitudes bad_phase{{1.0, 0.0, 0.0, 0.0, 0.0}, 4.0};
    CHECK_THROWS_AS(build_state(StateFamily::three_qubit(bad_phase)), std::invalid_argument);
}

TEST_CASE("ordered pairs") {
    std::mt19937_64 rng(61);
    const auto psi = oracle::random_pure(8, rng);
    const auto rho = oracle::pure(psi);
    const auto pairs = ordered_pairs(DensityMatrix(from_oracle(rho)));
    CHECK(testsupport::max_diff(to_oracle(pairs[0].matrix()), oracle::trace_out(rho, 3, 0b011)) < 1e-14);
    CHECK(testsupport::max_diff(to_oracle(pairs[1].matrix()), oracle::trace_out(rho, 3, 0b110)) < 1e-14);
    // C first, then A.
    CHECK(testsupport::max_diff(to_oracle(pairs[2].matrix()), oracle::swap_two_qubits(oracle::trace_out(rho, 3, 0b101))) < 1e-14);

    const auto rev = ordered_pairs(DensityMatrix(from_oracle(rho)), PairRoles::Reversed);
    CHECK(testsupport::max_diff(to_oracle(rev[0].matrix()), oracle::swap_two_qubits(oracle::trace_out(rho, 3, 0b011))) < 1e-14);
    CHECK(testsupport::max_diff(to_oracle(rev[2].matrix()), oracle::trace_out(rho, 3, 0b101)) < 1e-14);
    CHECK_THROWS_AS(ordered_pairs(DensityMatrix::maximally_mixed(4)), std::invalid_argument);
}

TEST_CASE("scans in l1") {
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto bell = scan_family([](double p) { return StateFamily::bell_mixture(p); }, grid, Measure::L1);
    REQUIRE(bell.size() == 3);
    CHECK(std::abs(bell[0].witness - (3 - kSqrt5)) < 1e-9);
    CHECK(std::abs(bell[1].witness) < 1e-9);
    CHECK(std::abs(bell[2].witness - (3 - kSqrt5)) < 1e-9);
    CHECK(bell[0].verdict);
    CHECK_FALSE(bell[1].verdict);

    const std::vector<double> wgrid{0.6, 0.8};
    const auto w = scan_family([](double p) { return StateFamily::werner(p); }, wgrid, Measure::L1);
    CHECK(std::abs(w[0].witness - (1.8 - kSqrt5)) < 1e-9);
    CHECK(std::abs(w[1].witness - (2.4 - kSqrt5)) < 1e-9);
    CHECK(w[0].param == 0.6);
}

TEST_CASE("bell mixture symmetry and Werner monotonicity in l1") {
    const auto grid = linspace(0.0, 1.0, 11);
    const auto bell = scan_family([](double p) { return StateFamily::bell_mixture(p); }, grid, Measure::L1);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(bell[i].witness - bell[grid.size() - 1 - i].witness) < 1e-6);
    for (std::size_t i = 0; i + 1 < grid.size() / 2; ++i) CHECK(bell[i].witness >= bell[i + 1].witness - 1e-9);

    const auto wer = scan_family([](double p) { return StateFamily::werner(p); }, grid, Measure::L1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) CHECK(wer[i].witness <= wer[i + 1].witness + 1e-9);
}

TEST_CASE("l1 Werner threshold") {
    const double p = find_naqi_threshold([](double q) { return StateFamily::werner(q); }, Measure::L1, 0.5, 1.0);
    CHECK(std::abs(p - kSqrt5 / 3) < 1e-4);
    CHECK_THROWS_AS(find_naqi_threshold([](double q) { return StateFamily::werner(q); }, Measure::L1, 0.8, 1.0),
                    std::invalid_argument);
}

TEST_CASE("exclusion anchors") {
    const auto r = exclusion_record(line_family(kPi / 2), {kPi / 2}, Measure::L1);
    CHECK(std::abs(r.pairs[0].value - 3.0) < 1e-6);
    CHECK(std::abs(r.pairs[1].value - kSqrt5) < 1e-6);
    CHECK(std::abs(r.pairs[2].value) < 1e-6);
    CHECK(r.count_exceeding == 1);

    ThreeQubitAmplitudes zero;
    const auto z = exclusion_record(zero, {0.0, 0.0}, Measure::L1);
    for (const auto& p : z.pairs) CHECK(std::abs(p.value - kSqrt5) < 1e-9);
    CHECK(z.count_exceeding == 0);
}

TEST_CASE("exclusion scans are ordered by grid index") {
    const auto recs = exclusion_scan_surface(3, 4, Measure::L1);
    REQUIRE(recs.size() == 12);
    CHECK(recs[0].params == std::vector<double>{0.0, 0.0});
    CHECK(recs[5].params[0] == doctest::Approx(kPi / 2));
    CHECK(recs[5].params[1] == doctest::Approx(2 * kPi / 3));
    for (const auto& r : recs) CHECK(r.count_exceeding <= 1);
    const auto line = exclusion_scan_line(5, Measure::L1);
    REQUIRE(line.size() == 5);
    CHECK(line[4].params[0] == doctest::Approx(2 * kPi));
}

TEST_CASE("csv output") {
    std::ostringstream scan;
    const std::vector<ScanPoint> pts{{0.5, 2.0, -0.2360679774997898, false, true}};
    write_scan_csv(scan, pts);
    CHECK(scan.str() == "param,N,witness,verdict\n0.5,2,-0.236067977,false\n");

    ExclusionRecord rec;
    rec.params = {0.1, 0.2};
    rec.pairs[0].value = 3.0;
    rec.pairs[1].value = kSqrt5;
    rec.count_exceeding = 1;
    std::ostringstream ex;
    write_exclusion_csv(ex, std::vector<ExclusionRecord>{rec});
    CHECK(ex.str() == "alpha,beta,N_AB,N_BC,N_CA,count_exceeding\n0.1,0.2,3,2.23606798,0,1\n");

    rec.params = {1.5};
    std::ostringstream line;
    write_exclusion_csv(line, std::vector<ExclusionRecord>{rec});
    CHECK(line.str().rfind("theta,N_AB,N_BC,N_CA,count_exceeding\n1.5,", 0) == 0);
}

TEST_CASE("linspace") {
    const auto v = linspace(0.0, 1.0, 5);
    CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
}
