#include "permlog/spin.h"

#include <array>
#include <bit>
#include <stdexcept>

namespace permlog {

namespace {

void require_spin_count(int n_spins, int min) {
    if (n_spins < min || n_spins > kMaxSpins) {
        throw std::invalid_argument("spin count " + std::to_string(n_spins) + " outside " + std::to_string(min) +
                                    ".." + std::to_string(kMaxSpins));
    }
}

void require_pair(int n_spins, int i, int j) {
    require_spin_count(n_spins, 2);
    if (i < 1 || i > n_spins || j < 1 || j > n_spins) {
        throw std::invalid_argument("spin label out of range: (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") with " + std::to_string(n_spins) + " spins");
    }
    if (i == j) {
        throw std::invalid_argument("exchange needs two distinct spins, got (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
    }
}

// Bit patterns for labels 1..16, spin 1 first.
constexpr std::array<std::string_view, 16> kFourSpinLabels = {
    "uuuu", "uuud", "uduu", "duuu", "uudu", "uudd", "udud", "dduu",
    "dudu", "duud", "uddu", "dddu", "dudd", "uddd", "ddud", "dddd",
};

}  // namespace

SpinConfiguration SpinConfiguration::parse(std::string_view text) {
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxSpins)) {
        throw std::invalid_argument("spin configuration must have 1.." + std::to_string(kMaxSpins) + " spins");
    }
    SpinConfiguration config{static_cast<int>(text.size()), 0};
    for (char ch : text) {
        config.bits <<= 1u;
        if (ch == 'd') {
            config.bits |= 1u;
        } else if (ch != 'u') {
            throw std::invalid_argument(std::string("spin configuration: expected 'u' or 'd', got '") + ch + "'");
        }
    }
    return config;
}

int SpinConfiguration::up_count() const { return n_spins - std::popcount(bits); }

std::string SpinConfiguration::to_string() const {
    std::string out;
    for (int k = 1; k <= n_spins; ++k) {
        out.push_back(is_down(k) ? 'd' : 'u');
    }
    return out;
}

SpinOperator::SpinOperator(int n_spins, Permutation perm) : n_spins_(n_spins), repr_(std::move(perm)) {
    require_spin_count(n_spins, 1);
    if (std::get<Permutation>(repr_).size() != dim()) {
        throw DimensionMismatch("spin operator: permutation size does not match 2^N");
    }
}

SpinOperator::SpinOperator(int n_spins, Matrix dense) : n_spins_(n_spins), repr_(std::move(dense)) {
    require_spin_count(n_spins, 1);
    if (std::get<Matrix>(repr_).dim() != dim()) {
        throw DimensionMismatch("spin operator: matrix dimension does not match 2^N");
    }
}

const Permutation& SpinOperator::permutation() const {
    if (const auto* p = std::get_if<Permutation>(&repr_)) {
        return *p;
    }
    throw std::logic_error("spin operator is not stored as a permutation");
}

Matrix SpinOperator::matrix() const {
    if (const auto* p = std::get_if<Permutation>(&repr_)) {
        return p->to_matrix();
    }
    return std::get<Matrix>(repr_);
}

SpinConfiguration SpinOperator::apply(const SpinConfiguration& config) const {
    if (config.n_spins != n_spins_) {
        throw std::invalid_argument("configuration has the wrong number of spins");
    }
    return {n_spins_, static_cast<std::uint32_t>(permutation().image(config.bits))};
}

Matrix pauli_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
Matrix pauli_y() { return Matrix::from_rows({{0.0, -kI}, {kI, 0.0}}); }
Matrix pauli_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Matrix embed_single_spin(int n_spins, int k, const Matrix& op) {
    require_spin_count(n_spins, 1);
    if (k < 1 || k > n_spins) {
        throw std::invalid_argument("spin label out of range");
    }
    Matrix out = k == 1 ? op : Matrix::identity(2);
    for (int slot = 2; slot <= n_spins; ++slot) {
        out = kron(out, slot == k ? op : Matrix::identity(2));
    }
    return out;
}

SpinOperator exchange_permutation(int n_spins, int i, int j) {
    require_pair(n_spins, i, j);
    const std::uint32_t bit_i = 1u << (n_spins - i);
    const std::uint32_t bit_j = 1u << (n_spins - j);
    const std::size_t dim = std::size_t{1} << n_spins;
    std::vector<std::size_t> map(dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        const bool differ = ((s & bit_i) != 0) != ((s & bit_j) != 0);
        map[s] = differ ? (s ^ bit_i ^ bit_j) : s;
    }
    return {n_spins, Permutation(std::move(map))};
}

SpinOperator exchange_pauli(int n_spins, int i, int j) {
    require_pair(n_spins, i, j);
    Matrix dot(std::size_t{1} << n_spins);
    for (const Matrix& sigma : {pauli_x(), pauli_y(), pauli_z()}) {
        dot += embed_single_spin(n_spins, i, sigma) * embed_single_spin(n_spins, j, sigma);
    }
    return {n_spins, (dot + Matrix::identity(dot.dim())) * 0.5};
}

SpinOperator number_up(int n_spins) {
    require_spin_count(n_spins, 1);
    Matrix total = Matrix::identity(std::size_t{1} << n_spins) * (0.5 * n_spins);
    for (int k = 1; k <= n_spins; ++k) {
        total += embed_single_spin(n_spins, k, pauli_z()) * 0.5;
    }
    return {n_spins, std::move(total)};
}

SpinOperator number_down(int n_spins) {
    const Matrix up = number_up(n_spins).matrix();
    return {n_spins, Matrix::identity(up.dim()) * static_cast<double>(n_spins) - up};
}

SpinOperator spinflip(int n_spins) {
    require_spin_count(n_spins, 1);
    const std::size_t dim = std::size_t{1} << n_spins;
    std::vector<std::size_t> map(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        map[s] = (dim - 1) ^ s;
    }
    return {n_spins, Permutation(std::move(map))};
}

int four_spin_label(const SpinConfiguration& config) {
    if (config.n_spins != 4) {
        throw std::invalid_argument("four_spin_label needs a 4-spin configuration");
    }
    const std::string text = config.to_string();
    for (std::size_t k = 0; k < kFourSpinLabels.size(); ++k) {
        if (kFourSpinLabels[k] == text) {
            return static_cast<int>(k) + 1;
        }
    }
    throw std::logic_error("four-spin label table is incomplete");
}

SpinConfiguration four_spin_state(int label) {
    if (label < 1 || label > 16) {
        throw std::invalid_argument("four-spin label must be in 1..16");
    }
    return SpinConfiguration::parse(kFourSpinLabels[static_cast<std::size_t>(label - 1)]);
}

}  // namespace permlog
