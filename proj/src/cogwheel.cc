#include "permlog/cogwheel.h"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace permlog {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive_n(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("cogwheel size N must be at least 1");
    }
}

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time scale T must be positive and finite");
    }
}

void require_phase_count(std::size_t n, const PhaseVector& phases) {
    if (phases.phases.size() != n) {
        throw std::invalid_argument("phase vector has length " + std::to_string(phases.phases.size()) +
                                    ", expected " + std::to_string(n));
    }
    for (double phi : phases.phases) {
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("phase vector has a non-finite entry");
        }
    }
}

}  // namespace

double PhaseVector::total() const { return std::accumulate(phases.begin(), phases.end(), 0.0); }

Matrix build_standard_form(std::size_t n, const PhaseVector& phases) {
    require_positive_n(n);
    require_phase_count(n, phases);
    Matrix u(n);
    for (std::size_t m = 0; m < n; ++m) {
        u((m + 1) % n, m) = std::polar(1.0, phases.phases[m]);
    }
    return u;
}

bool verify_power_identity(std::size_t n, const PhaseVector& phases, double tol) {
    const Matrix u = build_standard_form(n, phases);
    const Matrix expected = Matrix::identity(n) * std::polar(1.0, phases.total());
    return approx_equal(power(u, static_cast<unsigned>(n)), expected, tol);
}

CogwheelSpectrum cogwheel_energies(std::size_t n, double t, const PhaseVector& phases) {
    require_positive_n(n);
    require_positive_t(t);
    require_phase_count(n, phases);
    CogwheelSpectrum spec{n, t, std::vector<double>(n)};
    const double shift = phases.total();
    for (std::size_t k = 0; k < n; ++k) {
        spec.energies[k] = (kTwoPi * static_cast<double>(k) - shift) / (static_cast<double>(n) * t);
    }
    return spec;
}

EigenphaseMatrix eigenphases(std::size_t n) {
    require_positive_n(n);
    EigenphaseMatrix out{n, std::vector<std::vector<double>>(n, std::vector<double>(n))};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            // Reduce the integer product first so the phase is exact mod 2 pi.
            const std::size_t k = (r * c) % n;
            out.a[r][c] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        }
    }
    return out;
}

Diagonalizer diagonalizer(std::size_t n) {
    const EigenphaseMatrix phases = eigenphases(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Diagonalizer out{n, Matrix(n)};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            out.d(r, c) = std::polar(norm, phases.a[r][c]);
        }
    }
    return out;
}

Matrix cogwheel_hamiltonian(std::size_t n, double t) {
    require_positive_t(t);
    const Diagonalizer diag = diagonalizer(n);
    const CogwheelSpectrum spec = cogwheel_energies(n, t);
    return diag.d * Matrix::diagonal(std::span<const double>(spec.energies)) * dagger(diag.d);
}

Complex cogwheel_hamiltonian_entry(std::size_t n, double t, std::size_t row, std::size_t col) {
    require_positive_n(n);
    require_positive_t(t);
    const double scale = std::numbers::pi / (static_cast<double>(n) * t);
    if (row == col) {
        return scale * static_cast<double>(n - 1);
    }
    const double offset = static_cast<double>(static_cast<long long>(row) - static_cast<long long>(col));
    // |row - col| < N, so the cotangent argument is never a multiple of pi.
    assert((row > col ? row - col : col - row) % n != 0);
    const double cot = 1.0 / std::tan(std::numbers::pi * offset / static_cast<double>(n));
    return scale * Complex(-1.0, -cot);
}

std::vector<Complex> polynomial_coefficients(std::size_t n, double t) {
    const CogwheelSpectrum spec = cogwheel_energies(n, t);
    std::vector<Complex> h(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex sum = 0.0;
        for (std::size_t e = 0; e < n; ++e) {
            // E_e T k = 2 pi e k / N; reduce e k mod N before taking the phase.
            const double angle = kTwoPi * static_cast<double>((e * k) % n) / static_cast<double>(n);
            sum += spec.energies[e] * std::polar(1.0, angle);
        }
        h[k] = sum / static_cast<double>(n);
    }
    return h;
}

}  // namespace permlog
