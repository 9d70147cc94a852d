#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "rotor/errors.hpp"
#include "rotor/wigner.hpp"

using namespace rotor;

namespace {

const double kInv2Pi = 1.0 / kTwoPi;

AngularWaveFunction cat02(int cutoff = 4, const RotorSpec& spec = {}) {
    const Term t[] = {{0, 1.0}, {2, 1.0}};
    return make_superposition(t, cutoff, spec);
}

AngularWaveFunction mixed01(int cutoff = 2) {
    const Term t[] = {{0, 1.0}, {1, 1.0}};
    return make_superposition(t, cutoff);
}

} // namespace

TEST_CASE("wigner_point examples agree with the quadrature oracle") {
    auto psi3 = make_eigenstate(3, 5);
    for (double phi : {-2.0, 0.0, 1.3}) {
        CHECK(wigner_point(psi3, phi, 3.0) == doctest::Approx(kInv2Pi).epsilon(1e-14));
        CHECK(std::abs(oracle::wigner_quadrature(psi3, phi, 3.0) - kInv2Pi) < 1e-12);
        CHECK(wigner_point(psi3, phi, 2.0) == 0.0);
        CHECK(std::abs(oracle::wigner_quadrature(psi3, phi, 2.0)) < 1e-12);
    }
    auto cat = cat02();
    const double v = wigner_point(cat, kPi / 2, 1.0);
    CHECK(v == doctest::Approx(-kInv2Pi).epsilon(1e-14));
    CHECK(std::abs(oracle::wigner_quadrature(cat, kPi / 2, 1.0) - (-kInv2Pi)) < 1e-12);
    for (double phi : {0.0, 0.4, 2.5}) CHECK(wigner_point(cat, phi, 1.0) == doctest::Approx(std::cos(2 * phi) * kInv2Pi));
}

TEST_CASE("property: closed-form kernel matches quadrature at arbitrary (phi, J)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> action(-6.0, 6.0);
    for (int trial = 0; trial < 30; ++trial) {
        auto psi = oracle::random_state(rng, 4, -1);
        const double phi = angle(rng);
        const double J = action(rng);
        const Complex ref = oracle::wigner_quadrature(psi, phi, J);
        CHECK(std::abs(ref.imag()) < 1e-12);
        CHECK(std::abs(wigner_point(psi, phi, J) - ref.real()) < 1e-12);
    }
}

TEST_CASE("wigner_point scales with hbar") {
    const RotorSpec spec{0.5, 1.0};
    auto psi = make_eigenstate(2, 3, spec);
    CHECK(wigner_point(psi, 0.3, 2 * spec.hbar) == doctest::Approx(1.0 / (kTwoPi * spec.hbar)));
    CHECK(std::abs(oracle::wigner_quadrature(psi, 0.3, 1.0) - 1.0 / (kTwoPi * spec.hbar)) < 1e-12);
}

TEST_CASE("wigner_field examples") {
    const AngleGrid grid(16);
    SUBCASE("eigenstate on the integer lattice") {
        auto psi = make_eigenstate(1, 3);
        const auto field = wigner_field(psi, grid, MomentumLattice::covering(LatticeStep::Integer, 3));
        for (std::size_t r = 0; r < field.lattice().size(); ++r) {
            const double expected = field.lattice().j_over_hbar(r) == 1.0 ? kInv2Pi : 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(field.at(r, j) - expected) < 1e-15);
        }
        CHECK(field.mass() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("mixed state on the half lattice has interference at half-integer J") {
        auto psi = mixed01();
        const auto lattice = MomentumLattice::covering(LatticeStep::Half, 2);
        const auto field = wigner_field(psi, grid, lattice);
        for (std::size_t r = 0; r < lattice.size(); ++r) {
            if (lattice.twice_j(r) != 1) continue;
            // c_b conj(c_a) e^{-i phi} + c.c. with a = 1, b = 0
            for (std::size_t j = 0; j < grid.size(); ++j) {
                CHECK(field.at(r, j) == doctest::Approx(std::cos(grid.point(j)) * kInv2Pi).epsilon(1e-13));
            }
        }
        CHECK(field.mass() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("integer lattice rejects mixed parity") {
        CHECK_THROWS_AS(wigner_field(mixed01(), grid, MomentumLattice::covering(LatticeStep::Integer, 2)),
                        ParityLatticeError);
    }
}

TEST_CASE("property: series route equals kernel route on integer lattices") {
    std::mt19937_64 rng(11);
    const AngleGrid grid(24);
    for (int trial = 0; trial < 20; ++trial) {
        const int N = 2 + trial % 5;
        auto psi = oracle::random_state(rng, N, trial % 2);
        const auto lattice = MomentumLattice::for_state(psi);
        REQUIRE(lattice.step == LatticeStep::Integer);
        const auto field = wigner_field(psi, grid, lattice);
        double worst = 0.0;
        for (std::size_t r = 0; r < lattice.size(); ++r) {
            for (std::size_t j = 0; j < grid.size(); ++j) {
                worst = std::max(worst, std::abs(field.at(r, j) -
                                                 wigner_point(psi, grid.point(j), lattice.j_over_hbar(r))));
            }
        }
        CHECK(worst < 1e-10);
        CHECK(field.max_imag_residue() < 1e-10);
        CHECK(field.mass() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("half-lattice nodes of a mixed state differ from the continuous-J kernel") {
    // the kernel picks up j0(pi/2) cross terms that the lattice representation does not carry
    auto psi = mixed01();
    const AngleGrid grid(8);
    const auto lattice = MomentumLattice::covering(LatticeStep::Half, 2);
    const auto field = wigner_field(psi, grid, lattice);
    std::size_t row_half = 0;
    for (std::size_t r = 0; r < lattice.size(); ++r) {
        if (lattice.twice_j(r) == 1) row_half = r;
    }
    const double gap = wigner_point(psi, 0.0, 0.5) - field.at(row_half, grid.size() / 2);
    // pairs (0,0) and (1,1) contribute |c|^2 j0(-+pi/2) = (1/2)(2/pi) each
    CHECK(gap == doctest::Approx(kInv2Pi * 2.0 / kPi).epsilon(1e-13));
}

TEST_CASE("marginal consistency") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
        const int N = 3 + trial % 4;
        auto psi = oracle::random_state(rng, N, trial % 3 == 2 ? -1 : trial % 3);
        const AngleGrid grid(4 * N + 2);
        const auto lattice = MomentumLattice::for_state(psi);
        const auto field = wigner_field(psi, grid, lattice);
        const auto fa = field.angle_marginal();
        for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(fa[j] - marginal_angle(psi, grid.point(j))) < 1e-9);
        const auto fm = field.momentum_marginal();
        for (std::size_t r = 0; r < lattice.size(); ++r) {
            const double x = lattice.j_over_hbar(r);
            if (x != std::round(x)) {
                CHECK(std::abs(fm[r]) < 1e-12);
                continue;
            }
            CHECK(std::abs(fm[r] - marginal_momentum(psi, x)) < 1e-9);
        }
    }
}

TEST_CASE("marginal_angle examples") {
    CHECK(marginal_angle(make_eigenstate(4, 4), 0.9) == doctest::Approx(kInv2Pi).epsilon(1e-14));
    CHECK(marginal_angle(cat02(), 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(marginal_angle(cat02(), kPi / 2) < 1e-30);
}

TEST_CASE("marginal_momentum examples and sign dichotomy") {
    auto psi3 = make_eigenstate(3, 6);
    CHECK(marginal_momentum(psi3, 3.0) == 1.0);
    CHECK(marginal_momentum(psi3, 4.5) == doctest::Approx(-2.0 / (3.0 * kPi)).epsilon(1e-14));
    CHECK(marginal_momentum(cat02(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto psi = oracle::random_state(rng, 6, trial % 2);
        for (int n = -8; n <= 8; ++n) {
            CHECK(marginal_momentum(psi, n) >= -1e-12);
            CHECK(marginal_momentum(psi, n) == doctest::Approx(std::norm(psi.coeff(n))).epsilon(1e-14));
        }
    }
}

TEST_CASE("phase_space_overlap") {
    auto p0 = make_eigenstate(0, 4);
    CHECK(phase_space_overlap(p0, p0) == doctest::Approx(kInv2Pi).epsilon(1e-14));
    CHECK(phase_space_overlap(p0, make_eigenstate(2, 4)) == 0.0);
    CHECK(phase_space_overlap(p0, cat02()) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(phase_space_overlap(p0, make_eigenstate(0, 4, RotorSpec{3.0, 1.0})), SpecMismatch);

    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = oracle::random_state(rng, 5, -1);
        auto b = oracle::random_state(rng, 5, -1);
        CHECK(phase_space_overlap(a, a) == doctest::Approx(kInv2Pi).epsilon(1e-10));
        // half lattice with hbar per node reproduces the overlap for any parity
        const AngleGrid grid(22);
        const auto lattice = MomentumLattice::covering(LatticeStep::Half, 5);
        CHECK(std::abs(lattice_overlap(wigner_field(a, grid, lattice), wigner_field(b, grid, lattice)) -
                       phase_space_overlap(a, b)) < 1e-12);
    }
}

TEST_CASE("correlation_defect examples") {
    for (int n : {-2, 0, 3}) CHECK(std::abs(correlation_defect(make_eigenstate(n, 3), 0.7, n)) < 1e-15);
    CHECK(correlation_defect(cat02(), kPi / 2, 1.0) == doctest::Approx(-kInv2Pi).epsilon(1e-14));
    CHECK(std::abs(correlation_defect(make_eigenstate(0, 2), 0.0, 0.0)) < 1e-15);
}

TEST_CASE("window invariance of the gamma integral") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        auto psi = oracle::random_state(rng, 5, trial % 2);
        for (int J = -6; J <= 6; J += 3) {
            const double phi = -1.0 + 0.2 * trial;
            const Complex centred = wigner_point_window(psi, phi, J, -kPi);
            const Complex shifted = wigner_point_window(psi, phi, J, 0.0);
            CHECK(std::abs(centred - shifted) < 1e-10);
            CHECK(std::abs(centred.real() - wigner_point(psi, phi, J)) < 1e-14);
            CHECK(std::abs(shifted - oracle::wigner_quadrature(psi, phi, J, 0.0)) < 1e-11);
        }
    }
    auto mixed = mixed01();
    const Complex a = wigner_point_window(mixed, 0.3, 0.0, -kPi);
    const Complex b = wigner_point_window(mixed, 0.3, 0.0, 0.0);
    CHECK(std::abs(a - b) > 1e-3);
    CHECK(std::abs(b - oracle::wigner_quadrature(mixed, 0.3, 0.0, 0.0)) < 1e-11);
}

TEST_CASE("angle operator matrix") {
    const int N = 16;
    const auto op = angle_operator_matrix(N);
    CHECK(op.entry(0, 1) == Complex(0.0, 1.0));
    CHECK(op.entry(3, 3) == Complex(0.0, 0.0));
    CHECK(std::abs(op.entry(-1, 1) - Complex(0.0, -0.5)) < 1e-16);
    for (int b = -N; b <= N; ++b) {
        for (int a = -N; a <= N; ++a) {
            CHECK(op.entry(a, b) == std::conj(op.entry(b, a)));
            if (a != b) CHECK(std::abs(op.entry(b, a)) == doctest::Approx(1.0 / std::abs(a - b)));
        }
    }
    for (int k = -2 * N; k <= 2 * N; ++k) {
        CHECK(std::abs(AngleOperatorMatrix::element(0, k) - (k == 0 ? Complex{} : oracle::angle_fourier_integral(k))) <
              1e-10);
    }
    CHECK(std::abs(oracle::angle_fourier_integral(2) - Complex(0.0, -0.5)) < 1e-12);
    CHECK_THROWS_AS(angle_operator_matrix(0), DomainError);
    CHECK_THROWS_AS(op.entry(17, 0), CutoffViolation);
}

TEST_CASE("angle Fourier series") {
    CHECK(angle_fourier_series(3, kPi / 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(angle_fourier_series(200, kPi / 2) - kPi / 2) < 0.01);
    CHECK(angle_fourier_series(1, 0.0) == 0.0);
    for (double phi : {-2.5, -1.0, 0.3, 2.0}) CHECK(std::abs(angle_fourier_series(20000, phi) - phi) < 1e-3);
    CHECK_THROWS_AS(angle_fourier_series(0, 1.0), DomainError);
}

TEST_CASE("Gibbs limit sum") {
    CHECK(gibbs_limit_sum(10, kPi) == doctest::Approx(3.38447546981773502).epsilon(1e-14));
    CHECK(std::abs(gibbs_limit_sum(1, kPi)) < 1e-15);
    CHECK(gibbs_limit(kPi) == doctest::Approx(2.0 * oracle::sine_integral(kPi)).epsilon(1e-14));
    double prev_gap = 1.0;
    for (int n : {10, 100, 1000, 10000}) {
        const double gap = std::abs(gibbs_limit_sum(n, kPi) - gibbs_limit(kPi));
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // the quoted constant is not the limit of the displayed series
    CHECK(std::abs(gibbs_limit(kPi) / kPi - kGibbsQuotedPiUnits) > 0.08);
    CHECK_THROWS_AS(gibbs_limit_sum(0, 1.0), DomainError);
}

TEST_CASE("analyze inverts synthesize and checks resolution") {
    auto psi = cat02(3);
    const auto lattice = MomentumLattice::for_state(psi);
    const auto field = wigner_field(psi, AngleGrid(13), lattice);
    const auto spec = analyze(field);
    const auto direct = mode_spectrum(psi, lattice);
    for (std::size_t r = 0; r < lattice.size(); ++r) {
        for (int m = -6; m <= 6; ++m) CHECK(std::abs(spec.at(r, m) - direct.at(r, m)) < 1e-14);
    }
    CHECK_THROWS_AS(analyze(wigner_field(psi, AngleGrid(12), lattice)), ResolutionError);
}
