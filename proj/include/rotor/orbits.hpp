#ifndef ROTOR_ORBITS_HPP
#define ROTOR_ORBITS_HPP

#include <string>
#include <vector>

namespace rotor {

inline constexpr double kGravitationalConstant = 6.674e-11;  // m^3 kg^-1 s^-2
inline constexpr double kSpeedOfLight = 299792458.0;         // m/s
inline constexpr double kJupiterMass = 1.898e27;             // kg
inline constexpr double kSunMass = 1.989e30;                 // kg

/// Central body of a satellite system. R_G is always derived from the mass.
struct OrbitSystem {
    double central_mass = kJupiterMass;
    double gravitational_constant = kGravitationalConstant;
    double light_speed = kSpeedOfLight;

    static OrbitSystem jupiter() { return {}; }
    static OrbitSystem sun() { return {kSunMass}; }

    void validate() const;
};

/// R_G = 2 G M_o / c^2.
double schwarzschild_radius(const OrbitSystem& system);

/// J_G = M c R_G for an orbiter of mass M.
double action_scale(const OrbitSystem& system, double orbiter_mass);

/// r_n = R_G 2^{1 + 2n/3}.
double orbit_radius(int n, const OrbitSystem& system);

/// 3 log2(J / J_G); integral values mark the hypothesised quantized orbits.
double quantization_index(double J, const OrbitSystem& system, double orbiter_mass);

struct QuantizationReport {
    double index;
    long nearest;
    double deviation;  // index - nearest
};

QuantizationReport quantization_report(double J, const OrbitSystem& system, double orbiter_mass);

/// J_G 2^{n/3}, the inverse of quantization_index.
double action_from_index(double n, const OrbitSystem& system, double orbiter_mass);

struct KeplerCheck {
    double r_from_action;   // J^2 / (M^2 G M_o) with J = action_from_index(n)
    double r_from_formula;  // orbit_radius(n)
};

KeplerCheck kepler_consistency(int n, const OrbitSystem& system, double orbiter_mass);

struct OrbitRow {
    std::string name;
    int n;
    double r_obs;  // m
    double r_n;    // m
    double ratio;  // r_obs / r_n
};

/// Galilean satellites of Jupiter (observed radii bundled), n = 39..42.
std::vector<OrbitRow> table1(const OrbitSystem& system = OrbitSystem::jupiter());

} // namespace rotor

#endif
