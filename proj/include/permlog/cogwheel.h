#pragma once

// Cogwheels: N states visited cyclically by a standard-form permutation
// matrix U_N, together with the exact logarithm H_N defined by
// U_N = exp(-i H_N T).
//
// Everything here is 0-based. Translating from the usual 1-based write-up:
//
//   1-based                     0-based (this code)
//   E_n,  n = 1..N              energies[n], n = 0..N-1
//   2 pi (n-1) / (N T)          2 pi n / (N T)
//   a_nm = 2pi/N (nm-n-m+1)     a[n][m] = 2pi/N (n m)
//   (U)_{m+1,m}                 U(m+1 mod N, m)
//
// Energies use the branch [0, 2 pi / T): E_n = (2 pi n - sum(phi)) / (N T)
// with n ascending. Hamiltonians are only built for zero phases.

#include <cstddef>
#include <vector>

#include "permlog/linalg.h"

namespace permlog {

/// Phases phi_0..phi_{N-1} (radians) of a standard-form permutation matrix.
/// phi_m sits in column m.
struct PhaseVector {
    std::vector<double> phases;

    static PhaseVector zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
    double total() const;
};

struct CogwheelSpectrum {
    std::size_t n = 0;
    double t = 1.0;
    std::vector<double> energies;
};

/// a[n][m] in [0, 2 pi).
struct EigenphaseMatrix {
    std::size_t n = 0;
    std::vector<std::vector<double>> a;
};

/// D[n][m] = exp(i a[n][m]) / sqrt(N). Row n holds the components of the
/// n-th eigenvector of U_N in the auxiliary basis, so that
/// D^dagger U_N D = diag(exp(-i E_n T)) and H_N = D diag(E) D^dagger.
struct Diagonalizer {
    std::size_t n = 0;
    Matrix d;
};

/// Band-plus-corner permutation matrix: column m carries exp(i phi_m) at row
/// (m + 1) mod N. Throws std::invalid_argument on N = 0 or a length mismatch.
Matrix build_standard_form(std::size_t n, const PhaseVector& phases);
inline Matrix build_standard_form(std::size_t n) { return build_standard_form(n, PhaseVector::zeros(n)); }

/// (U_N)^N == exp(i sum phi) 1 within `tol`.
bool verify_power_identity(std::size_t n, const PhaseVector& phases, double tol = ToleranceConfig{}.eq_tol);

CogwheelSpectrum cogwheel_energies(std::size_t n, double t, const PhaseVector& phases);
inline CogwheelSpectrum cogwheel_energies(std::size_t n, double t) {
    return cogwheel_energies(n, t, PhaseVector::zeros(n));
}

EigenphaseMatrix eigenphases(std::size_t n);

Diagonalizer diagonalizer(std::size_t n);

/// H_N = D diag(E) D^dagger (zero phases). Self-adjoint and circulant:
/// diagonal pi (N-1) / (N T), off-diagonal
/// (pi / N T) (-1 - i cot(pi (n - m) / N)).
Matrix cogwheel_hamiltonian(std::size_t n, double t);

/// h_0..h_{N-1} with H_N = sum_k h_k U_N^k:
/// h_k = (1/N) sum_n E_n exp(i E_n T k).
std::vector<Complex> polynomial_coefficients(std::size_t n, double t);

/// Closed-form entry of H_N, evaluated without going through D. Used to
/// cross-check cogwheel_hamiltonian.
Complex cogwheel_hamiltonian_entry(std::size_t n, double t, std::size_t row, std::size_t col);

}  // namespace permlog
