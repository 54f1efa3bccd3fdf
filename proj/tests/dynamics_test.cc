#include "permlog/dynamics.h"

#include <algorithm>
#include <map>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "gtest/gtest.h"

#include "permlog/cogwheel.h"
#include "permlog/spin.h"

using namespace permlog;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kC = Complex(-1.0, 1.0) / 3.0;
const Complex kD = -1.0 / 3.0;

ExchangeWord sample_word() { return parse_word("P23 P12 P34", 4); }

std::size_t label_index(int label) { return four_spin_state(label).bits; }

// Eigenvalues of a Hermitian matrix from Eigen's solver, ascending.
std::vector<double> numerical_eigenvalues(const Matrix& h) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = h(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    const Eigen::VectorXd values = solver.eigenvalues();
    return {values.data(), values.data() + values.size()};
}

// Groups numerically close eigenvalues into (value, count).
std::vector<std::pair<double, std::size_t>> cluster(const std::vector<double>& values, double tol) {
    std::vector<std::pair<double, std::size_t>> out;
    for (double v : values) {
        if (!out.empty() && std::abs(out.back().first - v) <= tol) {
            ++out.back().second;
        } else {
            out.emplace_back(v, 1);
        }
    }
    return out;
}

// Every word of `length` factors over `n` spins that touches each spin.
std::vector<ExchangeWord> covering_words(int n, std::size_t length) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<ExchangeWord> out;
    std::vector<std::size_t> idx(length, 0);
    while (true) {
        ExchangeWord w{n, {}};
        for (std::size_t k : idx) w.factors.push_back(pairs[k]);
        if (w.untouched_spins().empty()) out.push_back(w);
        std::size_t pos = 0;
        while (pos < length && ++idx[pos] == pairs.size()) idx[pos++] = 0;
        if (pos == length) break;
    }
    return out;
}

}  // namespace

TEST(dynamics, parse_word_examples) {
    const ExchangeWord w = sample_word();
    EXPECT_EQ(w.n_spins, 4);
    EXPECT_EQ(w.factors, (std::vector<std::pair<int, int>>{{2, 3}, {1, 2}, {3, 4}}));
    EXPECT_EQ(w.to_string(), "P23 P12 P34");

    EXPECT_EQ(parse_word("P12", 2).factors.size(), 1u);
    EXPECT_EQ(parse_word("  (2 3) (1,2)\t(3 4) ", 4).factors, w.factors);
    const ExchangeWord big = parse_word("(10 11) P12", 12);
    EXPECT_EQ(big.factors[0], (std::pair<int, int>{10, 11}));
    EXPECT_EQ(big.to_string(), "(10 11) P12");
}

TEST(dynamics, parse_word_errors) {
    const auto position_of = [](std::string_view text, int n) -> std::size_t {
        try {
            parse_word(text, n);
        } catch (const ParseError& e) {
            return e.position();
        }
        ADD_FAILURE() << "no parse error for '" << text << "'";
        return 0;
    };
    EXPECT_EQ(position_of("P15", 4), 0u);  // label out of range
    EXPECT_EQ(position_of("P12 P15", 4), 4u);
    EXPECT_EQ(position_of("P12 Q34", 4), 4u);
    EXPECT_EQ(position_of("P1x", 4), 2u);
    EXPECT_EQ(position_of("P22", 4), 0u);
    EXPECT_EQ(position_of("P12P34", 4), 3u);
    EXPECT_EQ(position_of("(1 2", 4), 4u);
    EXPECT_EQ(position_of("", 4), 0u);
    EXPECT_EQ(position_of("   ", 4), 0u);
    EXPECT_THROW(parse_word("P12", 13), std::invalid_argument);
}

TEST(dynamics, untouched_spins_are_reported) {
    EXPECT_TRUE(sample_word().untouched_spins().empty());
    EXPECT_EQ(parse_word("P12 P23", 5).untouched_spins(), (std::vector<int>{4, 5}));
}

TEST(dynamics, evolution_follows_state_grouping) {
    const Permutation u = evolution_permutation(sample_word());
    // Rightmost factor first: U|5> = |2>.
    EXPECT_EQ(u.image(label_index(5)), label_index(2));
    EXPECT_EQ(u.image(label_index(10)), label_index(11));
    EXPECT_EQ(u.image(label_index(11)), label_index(10));

    const std::vector<std::pair<int, int>> successors = {
        {1, 1},  {16, 16}, {2, 3},   {3, 4},   {4, 5},   {5, 2},   {6, 7},   {7, 8},   {8, 9},
        {9, 6},  {10, 11}, {11, 10}, {12, 13}, {13, 14}, {14, 15}, {15, 12},
    };
    for (const auto& [from, to] : successors) {
        EXPECT_EQ(u.image(label_index(from)), label_index(to)) << "|" << from << ">";
    }
}

TEST(dynamics, evolution_single_factor) {
    const Permutation u = evolution_permutation(parse_word("P12", 2));
    EXPECT_EQ(u, exchange_permutation(2, 1, 2).permutation());
    EXPECT_THROW(evolution_permutation(ExchangeWord{4, {}}), std::invalid_argument);
}

TEST(dynamics, orbit_decomposition_of_sample_word) {
    const auto orbits = orbit_decomposition(evolution_permutation(sample_word()));
    EXPECT_EQ(orbits.lengths, (std::vector<std::size_t>{1, 1, 2, 4, 4, 4}));
    std::vector<std::size_t> fixed;
    for (const auto& cycle : orbits.cycles) {
        if (cycle.size() == 1) fixed.push_back(cycle[0]);
        EXPECT_EQ(cycle.front(), *std::min_element(cycle.begin(), cycle.end()));
    }
    EXPECT_EQ(fixed, (std::vector<std::size_t>{label_index(1), label_index(16)}));
    EXPECT_TRUE(std::is_sorted(orbits.cycles.begin(), orbits.cycles.end(),
                               [](const auto& a, const auto& b) { return a.front() < b.front(); }));
}

TEST(dynamics, orbit_decomposition_of_identity) {
    const auto orbits = orbit_decomposition(Permutation::identity(32));
    EXPECT_EQ(orbits.cycles.size(), 32u);
    EXPECT_EQ(orbits.lengths, std::vector<std::size_t>(32, 1));
}

TEST(dynamics, block_hamiltonian_of_sample_word) {
    const Permutation u = evolution_permutation(sample_word());
    const auto report = hamiltonian_from_permutation(u, 1.0);
    const Matrix h4 = cogwheel_hamiltonian(4, 1.0);
    const Matrix h2 = Matrix::from_rows({{1.0, -1.0}, {-1.0, 1.0}}) * (kPi / 2);

    // |2> -> |3> -> |4> -> |5> plays the role of auxiliary basis vectors 0..3.
    const std::vector<std::size_t> order = {label_index(2), label_index(3), label_index(4), label_index(5)};
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_LE(std::abs(report.h(order[a], order[b]) - h4(a, b)), 1e-15);
        }
    }
    const std::size_t ten = label_index(10);
    const std::size_t eleven = label_index(11);
    EXPECT_LE(std::abs(report.h(ten, ten) - h2(0, 0)), 1e-15);
    EXPECT_LE(std::abs(report.h(ten, eleven) - h2(0, 1)), 1e-15);
    EXPECT_EQ(report.h(label_index(1), label_index(1)), Complex(0.0));
    EXPECT_EQ(report.h(label_index(16), label_index(16)), Complex(0.0));

    int four_blocks = 0;
    for (const auto& block : report.per_cycle) {
        if (block.cycle.size() == 4) {
            ++four_blocks;
            EXPECT_LE(max_abs_diff(block.block, h4), 0.0);
        }
        if (block.cycle.size() == 2) EXPECT_LE(max_abs_diff(block.block, h2), 1e-15);
    }
    EXPECT_EQ(four_blocks, 3);

    // 4-cycle block in the literal 3pi/4 circ(1, c, d, c*) form.
    const Matrix literal = Matrix::from_rows({{1.0, kC, kD, std::conj(kC)},
                                              {std::conj(kC), 1.0, kC, kD},
                                              {kD, std::conj(kC), 1.0, kC},
                                              {kC, kD, std::conj(kC), 1.0}}) *
                           (3 * kPi / 4);
    EXPECT_LE(max_abs_diff(h4, literal), 1e-12);
}

TEST(dynamics, block_hamiltonian_identity_and_errors) {
    EXPECT_EQ(hamiltonian_from_permutation(Permutation::identity(8), 1.0).h, Matrix(8));
    EXPECT_THROW(hamiltonian_from_permutation(Permutation::identity(8), 0.0), std::invalid_argument);
    EXPECT_THROW(uniform_polynomial_form(Permutation::identity(8), -1.0), std::invalid_argument);
    EXPECT_THROW(spectrum(Permutation::identity(8), 0.0), std::invalid_argument);
}

TEST(dynamics, round_trip_for_all_three_factor_words) {
    for (int n : {3, 4}) {
        const auto words = covering_words(n, 3);
        ASSERT_FALSE(words.empty());
        for (const auto& word : words) {
            const Permutation u = evolution_permutation(word);
            for (double t : {1.0, 0.5}) {
                const auto report = hamiltonian_from_permutation(u, t);
                EXPECT_TRUE(is_self_adjoint(report.h, 1e-12));
                EXPECT_LE(max_abs_diff(expm(report.h * Complex(0.0, -t)), u.to_matrix()), 1e-10)
                    << word.to_string();
            }
        }
    }
}

TEST(dynamics, hamiltonian_respects_conservation_laws) {
    for (int n : {3, 4}) {
        const Matrix up = number_up(n).matrix();
        const Matrix down = number_down(n).matrix();
        const Matrix flip = spinflip(n).matrix();
        for (const auto& word : covering_words(n, 3)) {
            const Matrix h = hamiltonian_from_permutation(evolution_permutation(word), 1.0).h;
            EXPECT_LE(max_abs(commutator(h, up)), 1e-12);
            EXPECT_LE(max_abs(commutator(h, down)), 1e-12);
            EXPECT_LE(max_abs(commutator(h, flip)), 1e-12);
        }
    }
}

TEST(dynamics, uniform_polynomial_of_sample_word) {
    const Permutation u = evolution_permutation(sample_word());
    const auto poly = uniform_polynomial_form(u, 1.0);
    EXPECT_EQ(poly.period, 4u);
    const Complex expected[] = {1.0, std::conj(kC), kD, kC};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(std::abs(poly.coefficients[k] - expected[k] * (3 * kPi / 4)), 1e-12);
    }

    // U^2 = P23 P14, and U^3 = U^dagger = P34 P12 P23.
    const Permutation u2 = evolution_permutation(parse_word("P23 P14", 4));
    EXPECT_EQ(u * u, u2);
    EXPECT_EQ(u.inverse(), evolution_permutation(parse_word("P34 P12 P23", 4)));

    // H = 3pi/4 (1 + c* P23P12P34 + c P34P12P23 + d P23P14).
    const Matrix h = (Matrix::identity(16) + u.to_matrix() * std::conj(kC) + u.inverse().to_matrix() * kC +
                      u2.to_matrix() * kD) *
                     (3 * kPi / 4);
    EXPECT_LE(max_abs_diff(h, hamiltonian_from_permutation(u, 1.0).h), 1e-12);
}

TEST(dynamics, uniform_polynomial_identity) {
    const auto poly = uniform_polynomial_form(Permutation::identity(4), 1.0);
    EXPECT_EQ(poly.period, 1u);
    EXPECT_EQ(poly.coefficients, std::vector<Complex>{0.0});
}

TEST(dynamics, uniform_polynomial_matches_blocks_on_random_words) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        ExchangeWord word{n, {}};
        const std::size_t length = 1 + rng() % 6;
        for (std::size_t f = 0; f < length; ++f) {
            const int i = 1 + static_cast<int>(rng() % n);
            int j = 1 + static_cast<int>(rng() % (n - 1));
            if (j >= i) ++j;
            word.factors.emplace_back(i, j);
        }
        const Permutation u = evolution_permutation(word);
        const double t = 0.5 + (rng() % 100) / 50.0;
        const auto poly = uniform_polynomial_form(u, t);
        EXPECT_TRUE(u.pow(poly.period).is_identity());
        for (const auto& cycle : u.cycles()) {
            EXPECT_EQ(poly.period % cycle.size(), 0u);
        }
        const Matrix blocks = hamiltonian_from_permutation(u, t).h;
        EXPECT_LE(max_abs_diff(polynomial_in_permutation(u, poly.coefficients), blocks), 1e-10) << word.to_string();
    }
}

TEST(dynamics, polynomial_terms_commute) {
    const Matrix u = evolution_permutation(sample_word()).to_matrix();
    for (unsigned j = 0; j < 4; ++j) {
        for (unsigned k = 0; k < 4; ++k) {
            EXPECT_EQ(max_abs(commutator(power(u, j), power(u, k))), 0.0);
        }
    }
}

TEST(dynamics, spectrum_of_sample_word) {
    const Permutation u = evolution_permutation(sample_word());
    const auto spec = spectrum(u, 1.0);
    const std::vector<std::pair<double, std::size_t>> expected = {{0.0, 6}, {kPi / 2, 3}, {kPi, 4}, {3 * kPi / 2, 3}};
    ASSERT_EQ(spec.levels.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(spec.levels[k].energy, expected[k].first, 1e-15);
        EXPECT_EQ(spec.levels[k].multiplicity, expected[k].second);
    }
    EXPECT_EQ(spec.total_multiplicity(), 16u);
    // pi/2 only comes from the three 4-cycles.
    EXPECT_EQ(spec.levels[1].cycles.size(), 3u);

    // Independent oracle: eigenvalues of the assembled H.
    const auto numeric = cluster(numerical_eigenvalues(hamiltonian_from_permutation(u, 1.0).h), 1e-9);
    ASSERT_EQ(numeric.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
        EXPECT_NEAR(numeric[k].first, expected[k].first, 1e-9);
        EXPECT_EQ(numeric[k].second, expected[k].second);
    }
}

TEST(dynamics, spectrum_small_cases) {
    const auto id = spectrum(Permutation::identity(8), 1.0);
    ASSERT_EQ(id.levels.size(), 1u);
    EXPECT_EQ(id.levels[0].energy, 0.0);
    EXPECT_EQ(id.levels[0].multiplicity, 8u);

    const Permutation p12 = evolution_permutation(parse_word("P12", 2));
    const auto spec = spectrum(p12, 1.0);
    ASSERT_EQ(spec.levels.size(), 2u);
    EXPECT_EQ(spec.levels[0].multiplicity, 3u);
    EXPECT_NEAR(spec.levels[1].energy, kPi, 1e-15);
    EXPECT_EQ(spec.levels[1].multiplicity, 1u);
    const auto numeric = cluster(numerical_eigenvalues(hamiltonian_from_permutation(p12, 1.0).h), 1e-9);
    ASSERT_EQ(numeric.size(), 2u);
    EXPECT_EQ(numeric[0].second, 3u);
    EXPECT_NEAR(numeric[1].first, kPi, 1e-12);
}

TEST(dynamics, spectrum_matches_numerical_diagonalization) {
    for (const auto& word : covering_words(4, 3)) {
        const Permutation u = evolution_permutation(word);
        const auto spec = spectrum(u, 2.0);
        const auto numeric = cluster(numerical_eigenvalues(hamiltonian_from_permutation(u, 2.0).h), 1e-9);
        ASSERT_EQ(numeric.size(), spec.levels.size()) << word.to_string();
        for (std::size_t k = 0; k < numeric.size(); ++k) {
            EXPECT_NEAR(numeric[k].first, spec.levels[k].energy, 1e-9);
            EXPECT_EQ(numeric[k].second, spec.levels[k].multiplicity);
        }
    }
}
