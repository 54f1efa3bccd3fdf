#include "permlog/dynamics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "permlog/cogwheel.h"
#include "permlog/spin.h"

namespace permlog {

namespace {

void require_positive_t(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::invalid_argument("time scale T must be positive and finite");
    }
}

class WordParser {
   public:
    explicit WordParser(std::string_view text) : text_(text) {}

    std::vector<std::pair<std::size_t, std::pair<int, int>>> parse() {
        std::vector<std::pair<std::size_t, std::pair<int, int>>> out;
        skip_space();
        while (pos_ < text_.size()) {
            const std::size_t start = pos_;
            if (text_[pos_] == 'P') {
                ++pos_;
                const int i = digit();
                const int j = digit();
                out.push_back({start, {i, j}});
            } else if (text_[pos_] == '(') {
                ++pos_;
                skip_space();
                const int i = integer();
                skip_space();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    skip_space();
                }
                const int j = integer();
                skip_space();
                expect(')');
                out.push_back({start, {i, j}});
            } else {
                throw ParseError(std::string("expected 'P' or '(', got '") + text_[pos_] + "'", pos_);
            }
            if (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                throw ParseError("factors must be separated by whitespace", pos_);
            }
            skip_space();
        }
        if (out.empty()) {
            throw ParseError("empty exchange word", 0);
        }
        return out;
    }

   private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    int digit() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw ParseError("expected a digit", pos_);
        }
        return text_[pos_++] - '0';
    }

    int integer() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw ParseError("expected a spin label", pos_);
        }
        int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_++] - '0');
            if (value > 1000) {
                throw ParseError("spin label too large", pos_);
            }
        }
        return value;
    }

    void expect(char ch) {
        if (pos_ >= text_.size() || text_[pos_] != ch) {
            throw ParseError(std::string("expected '") + ch + "'", pos_);
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

void ExchangeWord::validate() const {
    if (n_spins < 2 || n_spins > kMaxSpins) {
        throw std::invalid_argument("spin count " + std::to_string(n_spins) + " outside 2.." +
                                    std::to_string(kMaxSpins));
    }
    if (factors.empty()) {
        throw std::invalid_argument("exchange word must have at least one factor");
    }
    for (const auto& [i, j] : factors) {
        if (i < 1 || i > n_spins || j < 1 || j > n_spins) {
            throw std::invalid_argument("label out of range in factor (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ") with " + std::to_string(n_spins) + " spins");
        }
        if (i == j) {
            throw std::invalid_argument("factor (" + std::to_string(i) + ", " + std::to_string(j) +
                                        ") exchanges a spin with itself");
        }
    }
}

std::vector<int> ExchangeWord::untouched_spins() const {
    std::vector<bool> touched(static_cast<std::size_t>(n_spins) + 1, false);
    for (const auto& [i, j] : factors) {
        if (i >= 1 && i <= n_spins) touched[static_cast<std::size_t>(i)] = true;
        if (j >= 1 && j <= n_spins) touched[static_cast<std::size_t>(j)] = true;
    }
    std::vector<int> out;
    for (int k = 1; k <= n_spins; ++k) {
        if (!touched[static_cast<std::size_t>(k)]) {
            out.push_back(k);
        }
    }
    return out;
}

std::string ExchangeWord::to_string() const {
    std::string out;
    for (const auto& [i, j] : factors) {
        if (!out.empty()) {
            out += ' ';
        }
        if (i <= 9 && j <= 9) {
            out += 'P' + std::to_string(i) + std::to_string(j);
        } else {
            out += '(' + std::to_string(i) + ' ' + std::to_string(j) + ')';
        }
    }
    return out;
}

ExchangeWord parse_word(std::string_view text, int n_spins) {
    WordParser parser(text);
    ExchangeWord word{n_spins, {}};
    for (const auto& [position, factor] : parser.parse()) {
        const auto [i, j] = factor;
        if (i < 1 || i > n_spins || j < 1 || j > n_spins) {
            throw ParseError("label out of range: (" + std::to_string(i) + ", " + std::to_string(j) + ") with " +
                                 std::to_string(n_spins) + " spins",
                             position);
        }
        if (i == j) {
            throw ParseError("factor exchanges spin " + std::to_string(i) + " with itself", position);
        }
        word.factors.push_back(factor);
    }
    word.validate();
    return word;
}

Permutation evolution_permutation(const ExchangeWord& word) {
    word.validate();
    Permutation u = Permutation::identity(std::size_t{1} << word.n_spins);
    for (const auto& [i, j] : word.factors) {
        u = u * exchange_permutation(word.n_spins, i, j).permutation();
    }
    return u;
}

OrbitDecomposition orbit_decomposition(const Permutation& perm) {
    OrbitDecomposition out;
    out.cycles = perm.cycles();
    for (const auto& cycle : out.cycles) {
        out.lengths.push_back(cycle.size());
    }
    std::sort(out.lengths.begin(), out.lengths.end());
    return out;
}

BlockHamiltonianReport hamiltonian_from_permutation(const Permutation& perm, double t) {
    require_positive_t(t);
    BlockHamiltonianReport report{Matrix(perm.size()), {}, t};
    std::map<std::size_t, Matrix> blocks;
    for (auto& cycle : perm.cycles()) {
        const std::size_t len = cycle.size();
        auto it = blocks.find(len);
        if (it == blocks.end()) {
            it = blocks.emplace(len, cogwheel_hamiltonian(len, t)).first;
        }
        const Matrix& block = it->second;
        for (std::size_t a = 0; a < len; ++a) {
            for (std::size_t b = 0; b < len; ++b) {
                report.h(cycle[a], cycle[b]) = block(a, b);
            }
        }
        report.per_cycle.push_back({std::move(cycle), block});
    }
    return report;
}

UniformPolynomial uniform_polynomial_form(const Permutation& perm, double t) {
    require_positive_t(t);
    const std::uint64_t period = perm.order();
    return {static_cast<std::size_t>(period), polynomial_coefficients(static_cast<std::size_t>(period), t)};
}

Matrix polynomial_in_permutation(const Permutation& perm, const std::vector<Complex>& coefficients) {
    Matrix out(perm.size());
    Permutation step = Permutation::identity(perm.size());
    for (Complex h : coefficients) {
        for (std::size_t col = 0; col < perm.size(); ++col) {
            out(step.image(col), col) += h;
        }
        step = perm * step;
    }
    return out;
}

std::size_t SpectrumReport::total_multiplicity() const {
    std::size_t total = 0;
    for (const auto& level : levels) {
        total += level.multiplicity;
    }
    return total;
}

SpectrumReport spectrum(const Permutation& perm, double t) {
    require_positive_t(t);
    // Key: reduced fraction n / L of the energy 2 pi n / (L T).
    struct Fraction {
        std::size_t num;
        std::size_t den;
        bool operator<(const Fraction& o) const { return num * o.den < o.num * den; }
    };
    std::map<Fraction, SpectrumLevel> levels;
    const auto cycles = perm.cycles();
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const std::size_t len = cycles[c].size();
        for (std::size_t n = 0; n < len; ++n) {
            const std::size_t g = std::gcd(n, len);
            const Fraction key{n / g, len / g};
            auto& level = levels[key];
            level.energy = 2.0 * std::numbers::pi * static_cast<double>(key.num) /
                           (static_cast<double>(key.den) * t);
            ++level.multiplicity;
            if (level.cycles.empty() || level.cycles.back() != c) {
                level.cycles.push_back(c);
            }
        }
    }
    SpectrumReport report;
    for (auto& [key, level] : levels) {
        report.levels.push_back(std::move(level));
    }
    return report;
}

}  // namespace permlog
