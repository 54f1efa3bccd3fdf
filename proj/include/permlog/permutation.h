#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permlog/linalg.h"

namespace permlog {

/// A bijection on {0, ..., size-1} in one-line form: `image(m)` is where m goes.
///
/// As an operator on basis vectors it maps |m> to |image(m)>, so the matrix
/// returned by to_matrix() has its 1 in column m at row image(m).
class Permutation {
   public:
    /// Throws std::invalid_argument if `map` is empty or not a bijection.
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t size);

    std::size_t size() const { return map_.size(); }
    std::size_t image(std::size_t m) const { return map_[m]; }
    const std::vector<std::size_t>& map() const { return map_; }

    Permutation inverse() const;
    Permutation pow(std::uint64_t k) const;

    /// Disjoint cycles in evolution order. Each cycle starts at its smallest
    /// member; cycles are sorted by that member. Fixed points are 1-cycles.
    std::vector<std::vector<std::size_t>> cycles() const;

    /// lcm of all cycle lengths: the smallest k >= 1 with pow(k) == identity.
    std::uint64_t order() const;

    bool is_identity() const;

    Matrix to_matrix() const;

    bool operator==(const Permutation&) const = default;

   private:
    std::vector<std::size_t> map_;
};

/// Operator product: (a * b) applies b first, then a.
Permutation operator*(const Permutation& a, const Permutation& b);

/// Inverse of Permutation::to_matrix for 0/1 matrices; throws if `m` is not a
/// permutation matrix with unit (unphased) entries within `tol`.
Permutation permutation_from_matrix(const Matrix& m, double tol);

}  // namespace permlog
