#include "permlog/permutation.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permlog {

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    if (map_.empty()) {
        throw std::invalid_argument("permutation must act on at least one index");
    }
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t target : map_) {
        if (target >= map_.size() || seen[target]) {
            throw std::invalid_argument("permutation map is not a bijection");
        }
        seen[target] = true;
    }
}

Permutation Permutation::identity(std::size_t size) {
    std::vector<std::size_t> map(size);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t m = 0; m < map_.size(); ++m) {
        inv[map_[m]] = m;
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::pow(std::uint64_t k) const {
    Permutation result = identity(size());
    Permutation base = *this;
    while (k > 0) {
        if (k & 1u) {
            result = result * base;
        }
        k >>= 1u;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

std::vector<std::vector<std::size_t>> Permutation::cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> visited(map_.size(), false);
    // Scanning starts in ascending order, so each cycle is discovered at its
    // smallest member and the list comes out sorted.
    for (std::size_t start = 0; start < map_.size(); ++start) {
        if (visited[start]) {
            continue;
        }
        std::vector<std::size_t> cycle;
        for (std::size_t m = start; !visited[m]; m = map_[m]) {
            visited[m] = true;
            cycle.push_back(m);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::uint64_t Permutation::order() const {
    std::uint64_t l = 1;
    for (const auto& cycle : cycles()) {
        l = std::lcm(l, static_cast<std::uint64_t>(cycle.size()));
    }
    return l;
}

bool Permutation::is_identity() const {
    for (std::size_t m = 0; m < map_.size(); ++m) {
        if (map_[m] != m) {
            return false;
        }
    }
    return true;
}

Matrix Permutation::to_matrix() const {
    Matrix m(size());
    for (std::size_t col = 0; col < size(); ++col) {
        m(map_[col], col) = 1.0;
    }
    return m;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("permutation product: size mismatch");
    }
    std::vector<std::size_t> map(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
        map[m] = a.image(b.image(m));
    }
    return Permutation(std::move(map));
}

Permutation permutation_from_matrix(const Matrix& m, double tol) {
    std::vector<std::size_t> map(m.dim(), m.dim());
    for (std::size_t col = 0; col < m.dim(); ++col) {
        for (std::size_t row = 0; row < m.dim(); ++row) {
            const Complex z = m(row, col);
            if (std::abs(z - Complex(1.0)) <= tol) {
                if (map[col] != m.dim()) {
                    throw std::invalid_argument("permutation_from_matrix: two unit entries in one column");
                }
                map[col] = row;
            } else if (std::abs(z) > tol) {
                throw std::invalid_argument("permutation_from_matrix: entry is neither 0 nor 1");
            }
        }
        if (map[col] == m.dim()) {
            throw std::invalid_argument("permutation_from_matrix: column without a unit entry");
        }
    }
    return Permutation(std::move(map));
}

}  // namespace permlog
