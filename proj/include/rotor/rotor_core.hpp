#ifndef ROTOR_ROTOR_CORE_HPP
#define ROTOR_ROTOR_CORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rotor {

using Complex = std::complex<double>;

/// Reduced Planck constant in J*s.
inline constexpr double kHbarSI = 1.054571817e-34;

/// Tolerance on sum |c_n|^2 = 1 and on |c_n| when classifying parity.
inline constexpr double kNormTolerance = 1e-12;

/**
 * Action scale and moment of inertia of a free plane rotator.
 * Defaults are natural units (hbar = I = 1).
 */
struct RotorSpec {
    double hbar = 1.0;
    double inertia = 1.0;

    static RotorSpec natural() { return {}; }
    static RotorSpec si(double inertia) { return {kHbarSI, inertia}; }

    /// Throws DomainError unless hbar > 0 and inertia > 0.
    void validate() const;

    bool operator==(const RotorSpec&) const = default;
};

/// Throws SpecMismatch if the two specs differ.
void require_same_spec(const RotorSpec& a, const RotorSpec& b);

/// Uniform angle grid phi_j = -pi + 2 pi j / M, j = 0..M-1.
class AngleGrid {
  public:
    explicit AngleGrid(std::size_t size);

    std::size_t size() const { return size_; }
    double spacing() const;
    double point(std::size_t j) const;
    std::vector<double> points() const;

  private:
    std::size_t size_;
};

enum class ParityClass { Even, Odd, Mixed };

const char* to_string(ParityClass p);

/**
 * Rotor state stored through its angular-momentum coefficients c_n,
 * n in [-N, N]. The angle representation psi(phi) = sum_n c_n e^{i n phi}/sqrt(2 pi)
 * is always derived from these. Instances are normalized and immutable.
 */
class AngularWaveFunction {
  public:
    /// Takes 2N+1 coefficients ordered from n = -N to n = N and renormalizes
    /// them. Throws DegenerateState for a zero vector.
    static AngularWaveFunction from_coefficients(std::vector<Complex> coeffs, const RotorSpec& spec);

    const RotorSpec& spec() const { return spec_; }
    int cutoff() const { return cutoff_; }

    /// c_n; zero outside [-N, N].
    Complex coeff(int n) const;
    std::span<const Complex> coefficients() const { return coeffs_; }

    /// psi(phi).
    Complex value(double phi) const;

    /// <J> = sum |c_n|^2 n hbar.
    double mean_momentum() const;
    /// <J^2> = sum |c_n|^2 (n hbar)^2.
    double momentum_second_moment() const;
    /// <H> with H = J^2 / 2I.
    double energy() const;

  private:
    AngularWaveFunction(std::vector<Complex> coeffs, int cutoff, const RotorSpec& spec)
        : spec_(spec), cutoff_(cutoff), coeffs_(std::move(coeffs)) {}

    RotorSpec spec_;
    int cutoff_;
    std::vector<Complex> coeffs_;
};

struct Term {
    int n;
    Complex amplitude;
};

/// psi_n(phi) = e^{i n phi}/sqrt(2 pi). Throws CutoffViolation if |n| > cutoff.
AngularWaveFunction make_eigenstate(int n, int cutoff, const RotorSpec& spec = {});

/// Normalized sum of the given terms (repeated n accumulate).
AngularWaveFunction make_superposition(std::span<const Term> terms, int cutoff, const RotorSpec& spec = {});

/**
 * Localized state with von Mises amplitude profile exp(kappa cos(phi - mean_angle)),
 * projected onto |n| <= cutoff: c_n proportional to I_n(kappa) e^{-i n mean_angle}.
 * concentration = 0 gives the uniform state psi_0.
 */
AngularWaveFunction make_wavepacket(double mean_angle, double concentration, int cutoff,
                                    const RotorSpec& spec = {});

/**
 * von Mises packet whose coefficients are tilted by e^{beta n}, with beta chosen
 * so that <J> equals mean_momentum. Equivalent to giving the packet a complex
 * centre mean_angle - i beta; the result is still periodic on the circle.
 */
AngularWaveFunction make_boosted_wavepacket(double mean_angle, double concentration, double mean_momentum,
                                            int cutoff, const RotorSpec& spec = {});

/// Samples psi(phi_j). Throws ResolutionError when grid.size() < 2N+1.
std::vector<Complex> to_angle_samples(const AngularWaveFunction& psi, const AngleGrid& grid);

/// Discrete Fourier coefficients of band-limited samples on the standard grid,
/// truncated to |n| <= cutoff and renormalized.
AngularWaveFunction from_angle_samples(std::span<const Complex> samples, int cutoff, const RotorSpec& spec = {});

/// <psi1|psi2> = sum_n conj(c1_n) c2_n. Throws SpecMismatch on differing specs.
Complex inner_product(const AngularWaveFunction& psi1, const AngularWaveFunction& psi2);

/// Classifies by which Fourier modes are populated; |c_n| < 1e-12 counts as zero.
ParityClass parity_class(const AngularWaveFunction& psi);

} // namespace rotor

#endif
