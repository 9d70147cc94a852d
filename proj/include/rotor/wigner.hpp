#ifndef ROTOR_WIGNER_HPP
#define ROTOR_WIGNER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rotor/rotor_core.hpp"
#include "rotor/special.hpp"

namespace rotor {

/// Spacing of the angular-momentum lattice: J = k hbar (Integer) or J = k hbar / 2 (Half).
enum class LatticeStep { Integer, Half };

const char* to_string(LatticeStep s);

/**
 * Finite window of lattice points k in [min_index, max_index], in units of the step.
 *
 * The Integer lattice is only consistent for states of good parity; a Mixed
 * state populates odd Fourier modes whose nodes sit at half-integer J/hbar.
 * Every node carries the measure hbar in lattice sums (int dJ -> hbar sum).
 */
struct MomentumLattice {
    LatticeStep step = LatticeStep::Integer;
    int min_index = 0;
    int max_index = 0;

    /// Smallest lattice holding every node a state with this cutoff can populate.
    static MomentumLattice covering(LatticeStep step, int cutoff);
    /// Covering lattice with the step implied by the state's parity.
    static MomentumLattice for_state(const AngularWaveFunction& psi);

    std::size_t size() const { return static_cast<std::size_t>(max_index - min_index + 1); }
    int index_at(std::size_t row) const { return min_index + static_cast<int>(row); }
    /// 2 J / hbar at the given row; always an integer.
    int twice_j(std::size_t row) const;
    double j_over_hbar(std::size_t row) const { return 0.5 * twice_j(row); }
};

/// Throws ParityLatticeError if an Integer lattice is paired with a Mixed state.
void require_compatible(const MomentumLattice& lattice, ParityClass parity);

/**
 * Fourier-mode amplitudes A(m, J/hbar) of a phase-space distribution,
 * f(phi, J) = (1/(2 pi hbar)) sum_m e^{-i m phi} A(m, J/hbar).
 * For a pure state A(m, x) = c_b conj(c_a) with a = x + m/2, b = x - m/2.
 */
class ModeSpectrum {
  public:
    ModeSpectrum(MomentumLattice lattice, int mode_limit);

    const MomentumLattice& lattice() const { return lattice_; }
    int mode_limit() const { return mode_limit_; }

    Complex at(std::size_t row, int m) const { return data_[offset(row, m)]; }
    Complex& at(std::size_t row, int m) { return data_[offset(row, m)]; }

    /// this += weight * other (same lattice and mode limit required).
    void add_scaled(const ModeSpectrum& other, double weight);

  private:
    std::size_t offset(std::size_t row, int m) const {
        return row * static_cast<std::size_t>(2 * mode_limit_ + 1) + static_cast<std::size_t>(m + mode_limit_);
    }

    MomentumLattice lattice_;
    int mode_limit_;
    std::vector<Complex> data_;
};

/// Separable momentum-representation amplitudes of a pure state on a lattice.
ModeSpectrum mode_spectrum(const AngularWaveFunction& psi, const MomentumLattice& lattice);

/// Real distribution f(phi_j, J_k); rows follow the lattice, columns the grid.
class WignerField {
  public:
    WignerField(AngleGrid grid, MomentumLattice lattice, RotorSpec spec, int mode_limit, std::vector<double> values,
                double max_imag_residue = 0.0);

    const AngleGrid& grid() const { return grid_; }
    const MomentumLattice& lattice() const { return lattice_; }
    const RotorSpec& spec() const { return spec_; }
    /// Highest |m| that may be present in a row; used by spectral transport.
    int mode_limit() const { return mode_limit_; }
    /// Largest |Im| dropped while synthesizing the real field.
    double max_imag_residue() const { return max_imag_residue_; }

    double at(std::size_t row, std::size_t j) const { return values_[row * grid_.size() + j]; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * grid_.size(), grid_.size()}; }
    std::span<const double> values() const { return values_; }

    /// hbar * sum_k (2 pi / M) * sum_j f.
    double mass() const;
    /// hbar * sum_k f(phi_j, J_k) for each grid point.
    std::vector<double> angle_marginal() const;
    /// (2 pi / M) sum_j f(phi_j, J_k) for each lattice row.
    std::vector<double> momentum_marginal() const;

  private:
    AngleGrid grid_;
    MomentumLattice lattice_;
    RotorSpec spec_;
    int mode_limit_;
    std::vector<double> values_;
    double max_imag_residue_;
};

/// Evaluates a spectrum on a grid. Throws ConsistencyError if the imaginary
/// residue exceeds 1e-10 / hbar.
WignerField synthesize(const ModeSpectrum& spectrum, const AngleGrid& grid, const RotorSpec& spec);

/// Recovers the mode amplitudes of a field, |m| <= mode_limit. Throws
/// ResolutionError unless grid.size() >= 2 * mode_limit + 1.
ModeSpectrum analyze(const WignerField& field);

/// hbar * sum_k (2 pi / M) sum_j f1 f2. Fields must share grid, lattice and spec.
double lattice_overlap(const WignerField& f1, const WignerField& f2);

/**
 * Cylinder Wigner function
 *   f(phi, J) = (1/(2 pi hbar)) int_{-pi}^{pi} dgamma e^{-i gamma J/hbar} psi(phi + gamma/2) conj(psi(phi - gamma/2)),
 * evaluated in closed form:
 *   (1/(2 pi hbar)) sum_{n,n'} c_n conj(c_n') e^{i (n - n') phi} j0(pi ((n + n')/2 - J/hbar)).
 * J may be any real value.
 */
double wigner_point(const AngularWaveFunction& psi, double phi, double J);

/// Same integral over the shifted window [gamma_start, gamma_start + 2 pi].
/// Complex because the result is only real for the symmetric window.
Complex wigner_point_window(const AngularWaveFunction& psi, double phi, double J, double gamma_start);

/// Field on grid x lattice via the mode-spectrum route.
WignerField wigner_field(const AngularWaveFunction& psi, const AngleGrid& grid, const MomentumLattice& lattice);

/// |psi(phi)|^2.
double marginal_angle(const AngularWaveFunction& psi, double phi);

/// (1/hbar) <psi|P_J|psi> = (1/hbar) sum_n |c_n|^2 j0(pi (n - J/hbar)); negative values allowed off-lattice.
double marginal_momentum(const AngularWaveFunction& psi, double J);

/// |<psi1|psi2>|^2 / (2 pi hbar).
double phase_space_overlap(const AngularWaveFunction& psi1, const AngularWaveFunction& psi2);

/// f(phi, J) - F_angle(phi) F_momentum(J).
double correlation_defect(const AngularWaveFunction& psi, double phi, double J);

/// Angle operator in the angular-momentum basis, phi'_{ba} = -(i/(a-b)) (-1)^{a-b} for a != b.
class AngleOperatorMatrix {
  public:
    explicit AngleOperatorMatrix(int cutoff);

    int cutoff() const { return cutoff_; }
    std::size_t dimension() const { return static_cast<std::size_t>(2 * cutoff_ + 1); }
    /// Stored entry phi'_{ba} for a, b in [-N, N].
    Complex entry(int b, int a) const;

    /// Closed form for arbitrary integer indices.
    static Complex element(int b, int a);

  private:
    int cutoff_;
    std::vector<Complex> entries_;
};

AngleOperatorMatrix angle_operator_matrix(int cutoff);

/// Truncated angle series 2 sum_{m=1}^{n} (-1)^{m+1} sin(m phi)/m.
double angle_fourier_series(int n_terms, double phi);

/// 2 sum_{m=1}^{n} sin(m phi / n)/m.
double gibbs_limit_sum(int n, double phi);

/// n -> infinity limit of gibbs_limit_sum: 2 Si(phi).
double gibbs_limit(double phi);

/// Commonly quoted phi = pi limit in units of pi. Reported next to 2 Si(pi)/pi
/// (about 1.17898) for comparison; it is not what the series converges to.
inline constexpr double kGibbsQuotedPiUnits = 1.08949;

} // namespace rotor

#endif
