#pragma once

// Evolution operators built from exchange words, their orbit structure, and
// the exact Hamiltonian assembled cycle by cycle from cogwheel logarithms.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permlog/linalg.h"
#include "permlog/permutation.h"

namespace permlog {

/// Ordered exchange factors (i, j), 1-based spin labels. Operator order: the
/// last listed factor acts first, so "P23 P12 P34" applies P34, then P12, then
/// P23.
struct ExchangeWord {
    int n_spins = 0;
    std::vector<std::pair<int, int>> factors;

    /// Throws std::invalid_argument on an empty word, a label outside
    /// 1..n_spins, or a factor with i == j.
    void validate() const;

    /// Spins no factor touches, ascending.
    std::vector<int> untouched_spins() const;

    /// Canonical text, e.g. "P23 P12 P34"; falls back to "(10 11)" notation
    /// for labels above 9.
    std::string to_string() const;
};

class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

   private:
    std::size_t position_;
};

/// Grammar: whitespace-separated factors, each either `P<digit><digit>` or
/// `(<int> <int>)` (a comma may separate the two integers). Factors keep their
/// textual order. Syntax errors carry the 0-based character offset.
ExchangeWord parse_word(std::string_view text, int n_spins);

/// Product of the exchange permutations, rightmost factor applied first.
Permutation evolution_permutation(const ExchangeWord& word);

struct OrbitDecomposition {
    /// Each cycle lists basis indices in evolution order, starting at its
    /// smallest member; cycles are sorted by that member.
    std::vector<std::vector<std::size_t>> cycles;
    /// Cycle lengths, ascending.
    std::vector<std::size_t> lengths;
};

OrbitDecomposition orbit_decomposition(const Permutation& perm);

struct CycleBlock {
    std::vector<std::size_t> cycle;
    Matrix block;
};

struct BlockHamiltonianReport {
    Matrix h;
    std::vector<CycleBlock> per_cycle;
    double t = 1.0;
};

/// Embeds cogwheel_hamiltonian(L, T) on the span of every cycle of length L,
/// with the m-th member of the cycle playing the role of auxiliary basis
/// vector m. Fixed points get energy 0. Throws for T <= 0.
BlockHamiltonianReport hamiltonian_from_permutation(const Permutation& perm, double t);

struct UniformPolynomial {
    /// lcm of all cycle lengths.
    std::size_t period = 1;
    /// h_0..h_{period-1}, equal to polynomial_coefficients(period, T).
    std::vector<Complex> coefficients;
};

/// Coefficients with H = sum_k h_k U^k on the whole configuration space.
/// Valid because every cycle length divides the lcm.
UniformPolynomial uniform_polynomial_form(const Permutation& perm, double t);

/// sum_k coefficients[k] U^k as a dense matrix.
Matrix polynomial_in_permutation(const Permutation& perm, const std::vector<Complex>& coefficients);

struct SpectrumLevel {
    double energy = 0.0;
    std::size_t multiplicity = 0;
    /// Indices into OrbitDecomposition::cycles of the cycles contributing this
    /// energy, ascending.
    std::vector<std::size_t> cycles;
};

struct SpectrumReport {
    /// Levels in ascending energy.
    std::vector<SpectrumLevel> levels;

    std::size_t total_multiplicity() const;
};

/// Analytic spectrum: each cycle of length L contributes 2 pi n / (L T),
/// n = 0..L-1. Energies from different cycles are merged by their exact
/// rational value n / L.
SpectrumReport spectrum(const Permutation& perm, double t);

}  // namespace permlog
