#pragma once

// Configuration space of N classical Ising spins (2 <= N <= 12 for exchange
// operators, N >= 1 elsewhere).
//
// Basis index convention: spin 1 is the most significant bit and up = 0,
// down = 1. So |up up ... up> is index 0 and |down ... down> is 2^N - 1, and
// spin k lives at bit position N - k.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "permlog/linalg.h"
#include "permlog/permutation.h"

namespace permlog {

inline constexpr int kMaxSpins = 12;

struct SpinConfiguration {
    int n_spins = 0;
    std::uint32_t bits = 0;

    /// Parses strings of 'u'/'d' such as "uudu". Throws std::invalid_argument
    /// on other characters or a length outside 1..kMaxSpins.
    static SpinConfiguration parse(std::string_view text);

    /// True if spin k (1-based) points down.
    bool is_down(int k) const { return (bits >> (n_spins - k)) & 1u; }
    int up_count() const;
    int down_count() const { return n_spins - up_count(); }

    std::string to_string() const;

    bool operator==(const SpinConfiguration&) const = default;
};

/// An operator on the 2^N configuration space, stored as a permutation when
/// it is one and as a dense matrix otherwise.
class SpinOperator {
   public:
    SpinOperator(int n_spins, Permutation perm);
    SpinOperator(int n_spins, Matrix dense);

    int n_spins() const { return n_spins_; }
    std::size_t dim() const { return std::size_t{1} << n_spins_; }

    bool is_permutation() const { return std::holds_alternative<Permutation>(repr_); }
    /// Throws std::logic_error for dense operators.
    const Permutation& permutation() const;
    /// Dense form; lossless for permutations (0/1 entries).
    Matrix matrix() const;

    /// Image of a configuration. Throws std::logic_error for dense operators.
    SpinConfiguration apply(const SpinConfiguration& config) const;

   private:
    int n_spins_;
    std::variant<Permutation, Matrix> repr_;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// 1 x ... x op x ... x 1 with `op` at spin k (1-based).
Matrix embed_single_spin(int n_spins, int k, const Matrix& op);

/// P_ij as a permutation of the 2^N configurations: swaps the values of
/// spins i and j (1-based). Throws std::invalid_argument for labels outside
/// 1..N, i == j, or N outside 2..kMaxSpins.
SpinOperator exchange_permutation(int n_spins, int i, int j);

/// P_ij = (sigma_i . sigma_j + 1) / 2 assembled from Kronecker products.
SpinOperator exchange_pauli(int n_spins, int i, int j);

/// N_u = (N/2) 1 + sum_k sigma^z_k / 2; eigenvalue = number of up spins.
SpinOperator number_up(int n_spins);
/// N_d = N 1 - N_u.
SpinOperator number_down(int n_spins);

/// C = prod_k sigma^x_k: flips every spin.
SpinOperator spinflip(int n_spins);

/// The 1..16 labels used for grouping four-spin states under the word
/// P23 P12 P34:
///   1 uuuu   2 uuud   3 uduu   4 duuu   5 uudu   6 uudd   7 udud   8 dduu
///   9 dudu  10 duud  11 uddu  12 dddu  13 dudd  14 uddd  15 ddud  16 dddd
/// (12..16 are the spin flips of 2, 3, 4, 5, 1). Throws for n_spins != 4.
int four_spin_label(const SpinConfiguration& config);
SpinConfiguration four_spin_state(int label);

}  // namespace permlog
