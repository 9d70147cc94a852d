#include "rotor/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotor/errors.hpp"
#include "rotor/parallel.hpp"

namespace rotor {

namespace {

constexpr double kImagTolerance = 1e-10;

bool is_even(int v) { return v % 2 == 0; }

// e^{-i m phi_j} on the standard grid: (-1)^m e^{-2 pi i m j / M}.
class GridTwiddles {
  public:
    explicit GridTwiddles(std::size_t size) : size_(size), roots_(size) {
        for (std::size_t t = 0; t < size; ++t) {
            roots_[t] = std::polar(1.0, -kTwoPi * static_cast<double>(t) / static_cast<double>(size));
        }
    }

    Complex operator()(int m, std::size_t j) const {
        const long long M = static_cast<long long>(size_);
        long long t = (static_cast<long long>(m) * static_cast<long long>(j)) % M;
        if (t < 0) t += M;
        const Complex w = roots_[static_cast<std::size_t>(t)];
        return is_even(m) ? w : -w;
    }

  private:
    std::size_t size_;
    std::vector<Complex> roots_;
};

} // namespace

const char* to_string(LatticeStep s) { return s == LatticeStep::Integer ? "int" : "half"; }

MomentumLattice MomentumLattice::covering(LatticeStep step, int cutoff) {
    if (cutoff < 0) throw DomainError("cutoff must be non-negative");
    const int reach = step == LatticeStep::Integer ? cutoff : 2 * cutoff;
    return {step, -reach, reach};
}

MomentumLattice MomentumLattice::for_state(const AngularWaveFunction& psi) {
    const auto step = parity_class(psi) == ParityClass::Mixed ? LatticeStep::Half : LatticeStep::Integer;
    return covering(step, psi.cutoff());
}

int MomentumLattice::twice_j(std::size_t row) const {
    const int k = index_at(row);
    return step == LatticeStep::Integer ? 2 * k : k;
}

void require_compatible(const MomentumLattice& lattice, ParityClass parity) {
    if (lattice.max_index < lattice.min_index) throw DomainError("empty momentum lattice");
    if (lattice.step == LatticeStep::Integer && parity == ParityClass::Mixed) {
        throw ParityLatticeError("integer momentum lattice requires a state of good parity; use the half lattice");
    }
}

ModeSpectrum::ModeSpectrum(MomentumLattice lattice, int mode_limit)
    : lattice_(lattice), mode_limit_(mode_limit),
      data_(lattice.size() * static_cast<std::size_t>(2 * mode_limit + 1)) {
    if (mode_limit < 0) throw DomainError("mode limit must be non-negative");
}

void ModeSpectrum::add_scaled(const ModeSpectrum& other, double weight) {
    if (other.mode_limit_ != mode_limit_ || other.lattice_.step != lattice_.step ||
        other.lattice_.min_index != lattice_.min_index || other.lattice_.max_index != lattice_.max_index) {
        throw DomainError("mode spectra have different shapes");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += weight * other.data_[i];
}

ModeSpectrum mode_spectrum(const AngularWaveFunction& psi, const MomentumLattice& lattice) {
    require_compatible(lattice, parity_class(psi));
    const int N = psi.cutoff();
    ModeSpectrum spec(lattice, 2 * N);
    for (std::size_t row = 0; row < lattice.size(); ++row) {
        const int twice_x = lattice.twice_j(row);
        // a = (2x + m)/2, b = (2x - m)/2 must both be integers
        const int first = is_even(twice_x) ? -2 * N : -2 * N + 1;
        for (int m = first; m <= 2 * N; m += 2) {
            const int a = (twice_x + m) / 2;
            const int b = (twice_x - m) / 2;
            if (std::abs(a) > N || std::abs(b) > N) continue;
            spec.at(row, m) = psi.coeff(b) * std::conj(psi.coeff(a));
        }
    }
    return spec;
}

WignerField::WignerField(AngleGrid grid, MomentumLattice lattice, RotorSpec spec, int mode_limit,
                         std::vector<double> values, double max_imag_residue)
    : grid_(grid), lattice_(lattice), spec_(spec), mode_limit_(mode_limit), values_(std::move(values)),
      max_imag_residue_(max_imag_residue) {
    if (values_.size() != grid_.size() * lattice_.size()) throw DomainError("field value count does not match shape");
}

double WignerField::mass() const {
    double total = 0.0;
    for (double v : values_) total += v;
    return total * spec_.hbar * grid_.spacing();
}

std::vector<double> WignerField::angle_marginal() const {
    std::vector<double> out(grid_.size(), 0.0);
    for (std::size_t r = 0; r < lattice_.size(); ++r) {
        for (std::size_t j = 0; j < grid_.size(); ++j) out[j] += at(r, j);
    }
    for (auto& v : out) v *= spec_.hbar;
    return out;
}

std::vector<double> WignerField::momentum_marginal() const {
    std::vector<double> out(lattice_.size(), 0.0);
    for (std::size_t r = 0; r < lattice_.size(); ++r) {
        double s = 0.0;
        for (double v : row(r)) s += v;
        out[r] = s * grid_.spacing();
    }
    return out;
}

WignerField synthesize(const ModeSpectrum& spectrum, const AngleGrid& grid, const RotorSpec& spec) {
    spec.validate();
    const auto& lattice = spectrum.lattice();
    const int L = spectrum.mode_limit();
    const std::size_t M = grid.size();
    const GridTwiddles twiddle(M);
    const double prefactor = 1.0 / (kTwoPi * spec.hbar);

    std::vector<double> values(lattice.size() * M);
    std::vector<double> residue(lattice.size(), 0.0);
    parallel_for(lattice.size(), [&](std::size_t row) {
        double worst = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            Complex s{0.0, 0.0};
            for (int m = -L; m <= L; ++m) {
                const Complex a = spectrum.at(row, m);
                if (a == Complex{}) continue;
                s += twiddle(m, j) * a;
            }
            s *= prefactor;
            values[row * M + j] = s.real();
            worst = std::max(worst, std::abs(s.imag()));
        }
        residue[row] = worst;
    });

    const double max_residue = residue.empty() ? 0.0 : *std::max_element(residue.begin(), residue.end());
    if (max_residue * spec.hbar >= kImagTolerance) {
        throw ConsistencyError("field synthesis left imaginary residue " + std::to_string(max_residue));
    }
    return WignerField(grid, lattice, spec, L, std::move(values), max_residue);
}

ModeSpectrum analyze(const WignerField& field) {
    const auto& grid = field.grid();
    const int L = field.mode_limit();
    if (grid.size() < 2 * static_cast<std::size_t>(L) + 1) {
        throw ResolutionError("grid of " + std::to_string(grid.size()) + " points cannot resolve modes up to " +
                              std::to_string(L));
    }
    const GridTwiddles twiddle(grid.size());
    const double scale = kTwoPi * field.spec().hbar / static_cast<double>(grid.size());
    ModeSpectrum out(field.lattice(), L);
    parallel_for(field.lattice().size(), [&](std::size_t row) {
        const auto values = field.row(row);
        for (int m = -L; m <= L; ++m) {
            Complex s{0.0, 0.0};
            // f = (1/2 pi hbar) sum_m e^{-i m phi} A_m  =>  A_m = (2 pi hbar / M) sum_j e^{+i m phi_j} f_j
            for (std::size_t j = 0; j < values.size(); ++j) s += std::conj(twiddle(m, j)) * values[j];
            out.at(row, m) = s * scale;
        }
    });
    return out;
}

double lattice_overlap(const WignerField& f1, const WignerField& f2) {
    require_same_spec(f1.spec(), f2.spec());
    if (f1.grid().size() != f2.grid().size() || f1.lattice().step != f2.lattice().step ||
        f1.lattice().min_index != f2.lattice().min_index || f1.lattice().max_index != f2.lattice().max_index) {
        throw DomainError("fields are sampled on different grids or lattices");
    }
    const auto a = f1.values();
    const auto b = f2.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * f1.spec().hbar * f1.grid().spacing();
}

double wigner_point(const AngularWaveFunction& psi, double phi, double J) {
    const int N = psi.cutoff();
    const double x = J / psi.spec().hbar;
    Complex s{0.0, 0.0};
    for (int n = -N; n <= N; ++n) {
        const Complex cn = psi.coeff(n);
        if (cn == Complex{}) continue;
        for (int np = -N; np <= N; ++np) {
            const Complex cnp = psi.coeff(np);
            if (cnp == Complex{}) continue;
            const double kernel = sinc_pi(0.5 * (n + np) - x);
            s += cn * std::conj(cnp) * std::polar(kernel, (n - np) * phi);
        }
    }
    s /= kTwoPi * psi.spec().hbar;
    if (std::abs(s.imag()) * psi.spec().hbar >= kImagTolerance) {
        throw ConsistencyError("Wigner function evaluation left imaginary residue " + std::to_string(s.imag()));
    }
    return s.real();
}

Complex wigner_point_window(const AngularWaveFunction& psi, double phi, double J, double gamma_start) {
    const int N = psi.cutoff();
    const double x = J / psi.spec().hbar;
    const double centre = gamma_start + kPi;
    Complex s{0.0, 0.0};
    for (int n = -N; n <= N; ++n) {
        const Complex cn = psi.coeff(n);
        if (cn == Complex{}) continue;
        for (int np = -N; np <= N; ++np) {
            const Complex cnp = psi.coeff(np);
            if (cnp == Complex{}) continue;
            const double d = 0.5 * (n + np) - x;
            // int_{c - pi}^{c + pi} e^{i gamma d} dgamma = 2 pi e^{i c d} j0(pi d)
            s += cn * std::conj(cnp) * std::polar(sinc_pi(d), (n - np) * phi + centre * d);
        }
    }
    return s / (kTwoPi * psi.spec().hbar);
}

WignerField wigner_field(const AngularWaveFunction& psi, const AngleGrid& grid, const MomentumLattice& lattice) {
    return synthesize(mode_spectrum(psi, lattice), grid, psi.spec());
}

double marginal_angle(const AngularWaveFunction& psi, double phi) { return std::norm(psi.value(phi)); }

double marginal_momentum(const AngularWaveFunction& psi, double J) {
    const double x = J / psi.spec().hbar;
    double s = 0.0;
    for (int n = -psi.cutoff(); n <= psi.cutoff(); ++n) {
        const double p = std::norm(psi.coeff(n));
        if (p == 0.0) continue;
        s += p * sinc_pi(n - x);
    }
    return s / psi.spec().hbar;
}

double phase_space_overlap(const AngularWaveFunction& psi1, const AngularWaveFunction& psi2) {
    return std::norm(inner_product(psi1, psi2)) / (kTwoPi * psi1.spec().hbar);
}

double correlation_defect(const AngularWaveFunction& psi, double phi, double J) {
    return wigner_point(psi, phi, J) - marginal_angle(psi, phi) * marginal_momentum(psi, J);
}

AngleOperatorMatrix::AngleOperatorMatrix(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1) throw DomainError("angle operator needs cutoff >= 1");
    const std::size_t dim = dimension();
    entries_.resize(dim * dim);
    for (int b = -cutoff; b <= cutoff; ++b) {
        for (int a = -cutoff; a <= cutoff; ++a) {
            entries_[static_cast<std::size_t>(b + cutoff) * dim + static_cast<std::size_t>(a + cutoff)] =
                element(b, a);
        }
    }
}

Complex AngleOperatorMatrix::element(int b, int a) {
    if (a == b) return {0.0, 0.0};
    const int k = a - b;
    const double sign = is_even(k) ? 1.0 : -1.0;
    return {0.0, -sign / static_cast<double>(k)};
}

Complex AngleOperatorMatrix::entry(int b, int a) const {
    if (std::abs(a) > cutoff_ || std::abs(b) > cutoff_) {
        throw CutoffViolation("angle operator index outside [-" + std::to_string(cutoff_) + ", " +
                              std::to_string(cutoff_) + "]");
    }
    return entries_[static_cast<std::size_t>(b + cutoff_) * dimension() + static_cast<std::size_t>(a + cutoff_)];
}

AngleOperatorMatrix angle_operator_matrix(int cutoff) { return AngleOperatorMatrix(cutoff); }

double angle_fourier_series(int n_terms, double phi) {
    if (n_terms < 1) throw DomainError("angle series needs at least one term");
    double s = 0.0;
    for (int m = 1; m <= n_terms; ++m) {
        const double sign = is_even(m) ? -1.0 : 1.0;
        s += sign * std::sin(m * phi) / m;
    }
    return 2.0 * s;
}

double gibbs_limit_sum(int n, double phi) {
    if (n < 1) throw DomainError("Gibbs sum needs n >= 1");
    const double step = phi / n;
    double s = 0.0;
    for (int m = 1; m <= n; ++m) s += std::sin(m * step) / m;
    return 2.0 * s;
}

double gibbs_limit(double phi) { return 2.0 * sine_integral(phi); }

} // namespace rotor
