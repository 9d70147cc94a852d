// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rotor/coherent.hpp"
#include "rotor/dynamics.hpp"
#include "rotor/orbits.hpp"
#include "rotor/thermal.hpp"
#include "rotor/wigner.hpp"

using namespace rotor;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

Outcome eigenstate_delta_law() {
    const AngleGrid grid(64);
    double worst = 0.0;
    for (int n = -5; n <= 5; ++n) {
        const auto psi = make_eigenstate(n, 5);
        for (int m = -5; m <= 5; ++m) {
            const double expected = n == m ? 1.0 / kTwoPi : 0.0;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                worst = std::max(worst, std::abs(wigner_point(psi, grid.point(j), m) - expected));
            }
        }
    }
    return {worst < 1e-10, fmt("max deviation %.3e (tol 1e-10)", worst)};
}

Outcome overlap_identity() {
    std::mt19937_64 rng(101);
    const int N = 16;
    const AngleGrid grid(4 * N + 2);
    const auto lattice = MomentumLattice::covering(LatticeStep::Integer, N);
    double closed_gap = 0.0;
    double lattice_gap = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const auto a = oracle::random_state(rng, N, 0);
        const auto b = oracle::random_state(rng, N, 0);
        const double overlap = phase_space_overlap(a, b);
        closed_gap = std::max(closed_gap, std::abs(overlap - std::norm(inner_product(a, b)) / kTwoPi));
        const double sum = lattice_overlap(wigner_field(a, grid, lattice), wigner_field(b, grid, lattice));
        lattice_gap = std::max(lattice_gap, std::abs(sum - overlap));
    }
    return {closed_gap < 1e-10 && lattice_gap < 1e-8,
            fmt("closed-form gap %.3e (tol 1e-10), lattice-sum gap %.3e (tol 1e-8)", closed_gap, lattice_gap)};
}

Outcome marginal_dichotomy() {
    const auto psi = make_eigenstate(3, 6);
    double min_integer = 0.0;
    for (int n = -12; n <= 12; ++n) min_integer = std::min(min_integer, marginal_momentum(psi, n));
    const double off = marginal_momentum(psi, 4.5);
    const double target = -2.0 / (3.0 * kPi);
    return {min_integer >= -1e-12 && std::abs(off - target) < 1e-12,
            fmt("min over integer J %.3e, F(4.5 hbar) = %.15f vs -2/(3 pi) = %.15f", min_integer, off, target)};
}

Outcome quantum_classical_coherence() {
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> time(0.0, 10.0);
    const int N = 8;
    const AngleGrid grid(4 * N + 2);
    const auto lattice = MomentumLattice::covering(LatticeStep::Integer, N);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = oracle::random_state(rng, N, 0);
        worst = std::max(worst, coherence_residual(psi, {time(rng), {}}, grid, lattice));
    }
    return {worst < 1e-9, fmt("max residual %.3e over 50 states (tol 1e-9)", worst)};
}

Outcome window_invariance() {
    std::mt19937_64 rng(303);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto psi = oracle::random_state(rng, 6, trial % 2);
        for (int k = -7; k <= 7; ++k) {
            for (double phi : {-2.5, -0.4, 0.0, 1.3, 3.0}) {
                worst = std::max(worst, std::abs(wigner_point_window(psi, phi, k, 0.0) -
                                                 wigner_point_window(psi, phi, k, -kPi)));
            }
        }
    }
    // the same comparison with both windows integrated numerically
    double quad_worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const auto psi = oracle::random_state(rng, 4, 0);
        for (int k = -4; k <= 4; ++k) {
            quad_worst = std::max(quad_worst, std::abs(oracle::wigner_quadrature(psi, 0.7, k, 0.0) -
                                                       oracle::wigner_quadrature(psi, 0.7, k, -kPi)));
        }
    }
    worst = std::max(worst, quad_worst);
    const Term terms[] = {{0, 1.0}, {1, 1.0}};
    const auto mixed = make_superposition(terms, 1);
    const double counter =
        std::abs(wigner_point_window(mixed, 0.3, 0.0, 0.0) - wigner_point_window(mixed, 0.3, 0.0, -kPi));
    const double quad_counter =
        std::abs(oracle::wigner_quadrature(mixed, 0.3, 0.0, 0.0) - oracle::wigner_quadrature(mixed, 0.3, 0.0, -kPi));
    return {worst < 1e-10 && counter > 1e-3 && quad_counter > 1e-3,
            fmt("definite parity max gap %.3e (tol 1e-10), mixed counterexample gap %.3e / quadrature %.3e (> 1e-3)",
                worst, counter, quad_counter)};
}

Outcome angle_operator() {
    const int N = 16;
    const auto op = angle_operator_matrix(N);
    double worst = 0.0;
    for (int b = -N; b <= N; ++b) {
        for (int a = -N; a <= N; ++a) {
            worst = std::max(worst, std::abs(op.entry(b, a) - oracle::angle_fourier_integral(a - b)));
        }
    }
    const bool unit = op.entry(0, 1) == Complex(0.0, 1.0) && op.entry(-3, -2) == Complex(0.0, 1.0);
    return {worst < 1e-10 && unit, fmt("max deviation from Fourier integrals %.3e (tol 1e-10), entry(a-b=1) == i: ",
                                       worst) + (unit ? "yes" : "no")};
}

Outcome gibbs_limit_check() {
    const double reference = 2.0 * oracle::sine_integral(kPi);
    const double partial = gibbs_limit_sum(100000, kPi);
    const double rel = std::abs(partial - reference) / reference;
    const double quoted = kGibbsQuotedPiUnits * kPi;
    std::string detail = fmt("S(1e5, pi) = %.10f, 2 Si(pi) by quadrature = %.10f, relative gap %.3e (tol 1e-4)",
                             partial, reference, rel);
    detail += fmt("; quoted 1.08949 pi = %.6f differs from the limit by %.4f pi (documented discrepancy)", quoted,
                  (reference - quoted) / kPi);
    return {rel < 1e-4, detail};
}

ThermalEnsemble packet_ensemble(double spread) {
    std::vector<AngularWaveFunction> states;
    const double angles[] = {-1.0, 0.2, 1.4};
    for (int s = 0; s < 3; ++s) states.push_back(make_boosted_wavepacket(angles[s], 2.0, 2.0 + spread * (s - 1), 24));
    return ThermalEnsemble(states, {1.0, 1.0, 1.0}, {});
}

Outcome thermal_wave_equation() {
    std::vector<AngularWaveFunction> eig;
    for (int n = -2; n <= 2; ++n) eig.push_back(make_eigenstate(n, 2));
    const auto ens = build_boltzmann_ensemble(eig, 1.5);
    const double eig_residual =
        wave_equation_residual(ens, AngleGrid(10), MomentumLattice::covering(LatticeStep::Integer, 2));

    const AngleGrid grid(98);
    const auto lattice = MomentumLattice::covering(LatticeStep::Half, 24);
    std::vector<double> r;
    for (double spread : {0.5, 0.25, 0.1}) r.push_back(wave_equation_residual(packet_ensemble(spread), grid, lattice));
    const bool monotone = r[0] > r[1] && r[1] > r[2];
    std::string detail = fmt("eigenstate ensemble residual %.3e (tol 1e-12); ", eig_residual);
    detail += fmt("packet residuals for spread 0.5/0.25/0.1: %.4e, %.4e, %.4e", r[0], r[1], r[2]);
    return {eig_residual <= 1e-12 && monotone, detail};
}

Outcome coherent_weights() {
    double worst = 0.0;
    for (double lambda : {1.0, 4.0, 10.0}) {
        const auto p = poisson_weights(lambda, 120);
        const Complex z = std::polar(std::sqrt(lambda), 1.1);
        for (int n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(coherent_overlap_weight(z, n) - p.weights[n]));
    }
    const double w4 = poisson_weights(4.0, 60).weights[4];
    const double gap = std::abs(distribution_entropy(poisson_weights(50.0, 400)) - gaussian_reference_entropy(50.0));
    return {worst < 1e-12 && std::abs(w4 - 0.195367) < 5e-7 && gap < 0.01,
            fmt("overlap vs Poisson max gap %.3e (tol 1e-12), w_4(4) = %.6f, entropy gap at 50 = %.5f (< 0.01)", worst,
                w4, gap)};
}

Outcome table_reproduction() {
    const double rg = schwarzschild_radius(OrbitSystem::jupiter());
    const double printed_rn[] = {378.5e3, 600.8e3, 953.7e3, 1514e3};
    const double printed_ratio[] = {1.11, 1.12, 1.12, 1.24};
    bool ok = std::abs(rg - 2.82) / 2.82 < 0.01;
    double worst_rn = 0.0;
    bool ratios = true;
    const auto rows = table1();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        worst_rn = std::max(worst_rn, std::abs(rows[i].r_n / 1e3 - printed_rn[i]) / printed_rn[i]);
        ratios = ratios && std::abs(std::round(rows[i].ratio * 100.0) / 100.0 - printed_ratio[i]) < 1e-9;
    }
    ok = ok && rows.size() == 4 && worst_rn < 2e-3 && ratios;
    return {ok, fmt("R_G = %.4f m, worst r_n deviation %.4f%% (tol 0.2%%), ratios rounded match: ", rg,
                    100.0 * worst_rn) +
                    (ratios ? "yes" : "no")};
}

Outcome normalization_realness() {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> cutoff(1, 12);
    double mass_gap = 0.0;
    double residue = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int N = cutoff(rng);
        const auto psi = oracle::random_state(rng, N, trial % 3 - 1);
        const auto field = wigner_field(psi, AngleGrid(4 * N + 2), MomentumLattice::for_state(psi));
        mass_gap = std::max(mass_gap, std::abs(field.mass() - 1.0));
        residue = std::max(residue, field.max_imag_residue());
    }
    return {mass_gap < 1e-9 && residue < 1e-10,
            fmt("max |mass - 1| %.3e (tol 1e-9), max imaginary residue %.3e (tol 1e-10)", mass_gap, residue)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"eigenstate delta law", eigenstate_delta_law},
        {"overlap identity", overlap_identity},
        {"marginal positivity/negativity", marginal_dichotomy},
        {"quantum-classical coherence", quantum_classical_coherence},
        {"window invariance", window_invariance},
        {"angle operator", angle_operator},
        {"Gibbs limit", gibbs_limit_check},
        {"thermal wave equation", thermal_wave_equation},
        {"coherent-state weights", coherent_weights},
        {"Galilean-moon table", table_reproduction},
        {"normalization and realness", normalization_realness},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2zu. %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
