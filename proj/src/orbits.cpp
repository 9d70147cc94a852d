#include "rotor/orbits.hpp"

#include <array>
#include <cmath>

#include "rotor/errors.hpp"

namespace rotor {

namespace {

struct ObservedSatellite {
    const char* name;
    int n;
    double r_obs_km;
};

// Observed mean orbital radii of the Galilean moons, 10^3 km precision as tabulated.
constexpr std::array<ObservedSatellite, 4> kGalileanMoons{{
    {"Io", 39, 421.6e3},
    {"Europa", 40, 670.8e3},
    {"Ganymede", 41, 1070.0e3},
    {"Callisto", 42, 1882.0e3},
}};

void require_positive_mass(double m) {
    if (!(m > 0.0)) throw DomainError("orbiter mass must be positive");
}

} // namespace

void OrbitSystem::validate() const {
    if (!(central_mass > 0.0)) throw DomainError("central mass must be positive");
    if (!(gravitational_constant > 0.0)) throw DomainError("gravitational constant must be positive");
    if (!(light_speed > 0.0)) throw DomainError("light speed must be positive");
}

double schwarzschild_radius(const OrbitSystem& system) {
    system.validate();
    return 2.0 * system.gravitational_constant * system.central_mass / (system.light_speed * system.light_speed);
}

double action_scale(const OrbitSystem& system, double orbiter_mass) {
    require_positive_mass(orbiter_mass);
    return orbiter_mass * system.light_speed * schwarzschild_radius(system);
}

double orbit_radius(int n, const OrbitSystem& system) {
    if (n < 0) throw DomainError("orbit index must be non-negative");
    return schwarzschild_radius(system) * std::exp2(1.0 + 2.0 * n / 3.0);
}

double quantization_index(double J, const OrbitSystem& system, double orbiter_mass) {
    if (!(J > 0.0)) throw DomainError("action must be positive");
    return 3.0 * std::log2(J / action_scale(system, orbiter_mass));
}

QuantizationReport quantization_report(double J, const OrbitSystem& system, double orbiter_mass) {
    const double idx = quantization_index(J, system, orbiter_mass);
    const long nearest = std::lround(idx);
    return {idx, nearest, idx - static_cast<double>(nearest)};
}

double action_from_index(double n, const OrbitSystem& system, double orbiter_mass) {
    return action_scale(system, orbiter_mass) * std::exp2(n / 3.0);
}

KeplerCheck kepler_consistency(int n, const OrbitSystem& system, double orbiter_mass) {
    const double J = action_from_index(n, system, orbiter_mass);
    const double gm = system.gravitational_constant * system.central_mass;
    // circular orbit: J = M sqrt(G M_o r)
    const double r = (J / orbiter_mass) * (J / orbiter_mass) / gm;
    return {r, orbit_radius(n, system)};
}

std::vector<OrbitRow> table1(const OrbitSystem& system) {
    std::vector<OrbitRow> rows;
    rows.reserve(kGalileanMoons.size());
    for (const auto& moon : kGalileanMoons) {
        const double r_obs = moon.r_obs_km * 1e3;
        const double r_n = orbit_radius(moon.n, system);
        rows.push_back({moon.name, moon.n, r_obs, r_n, r_obs / r_n});
    }
    return rows;
}

} // namespace rotor
