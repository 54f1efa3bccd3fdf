#include "permlog/bch.h"

#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "permlog/spin.h"
#include "test_util.h"

using namespace permlog;
using permlog::testing::random_matrix;

namespace {

constexpr double kPi = std::numbers::pi;

ExchangeWord sample_word() { return parse_word("P23 P12 P34", 4); }

Matrix exchange(int n, int i, int j) { return exchange_permutation(n, i, j).matrix(); }

}  // namespace

TEST(bch, chain_of_sample_word) {
    const auto result = bch_chain(sample_word(), 1.0);
    EXPECT_EQ(result.baseline, exchange(4, 2, 3) * exchange(4, 1, 2) * exchange(4, 3, 4));
    ASSERT_EQ(result.forms.size(), 4u);
    EXPECT_EQ(result.forms[0].first, "product");
    EXPECT_EQ(result.forms[1].first, "tail_sum");
    EXPECT_EQ(result.forms[2].first, "tail_product");
    EXPECT_EQ(result.forms[3].first, "hamiltonian");
    EXPECT_LT(result.max_deviation, 1e-10);
    for (const auto& [label, m] : result.forms) {
        EXPECT_LE(max_abs_diff(m, result.baseline), 1e-10) << label;
    }
    // The two tail forms agree because [P12, P34] = 0 and (P12 P34)^2 = 1.
    EXPECT_LE(max_abs_diff(result.forms[1].second, result.forms[2].second), 1e-10);
}

TEST(bch, chain_is_independent_of_time_scale) {
    for (double t : {0.25, 3.0}) {
        EXPECT_LT(bch_chain(sample_word(), t).max_deviation, 1e-10);
    }
}

TEST(bch, single_exchange_exponentiates_exactly) {
    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
            const Matrix p = exchange(4, i, j);
            EXPECT_LE(max_abs_diff(exp_involution(p, kPi / 2) * kI, p), 1e-15);
        }
    }
}

TEST(bch, chain_needs_commuting_tail) {
    EXPECT_THROW(bch_chain(parse_word("P34 P12 P23", 4), 1.0), PreconditionViolation);
    EXPECT_THROW(bch_chain(parse_word("P12", 2), 1.0), PreconditionViolation);
    // Other words with a disjoint tail work too.
    EXPECT_LT(bch_chain(parse_word("P13 P24 P15 P23", 5), 1.0).max_deviation, 1e-10);
    EXPECT_LT(bch_chain(parse_word("P12 P12", 3), 1.0).max_deviation, 1e-10);
}

TEST(bch, coupling_variants) {
    const ExchangeWord w = sample_word();
    EXPECT_TRUE(coupling_variant_check(w, 0, CouplingFamily::plus_half));
    EXPECT_TRUE(coupling_variant_check(w, 1, CouplingFamily::plus_half));
    EXPECT_TRUE(coupling_variant_check(w, 0, CouplingFamily::plus_three_half));
    for (int k = -2; k <= 2; ++k) {
        EXPECT_TRUE(coupling_variant_check(w, k, CouplingFamily::plus_half)) << k;
        EXPECT_TRUE(coupling_variant_check(w, k, CouplingFamily::plus_three_half)) << k;
    }
    EXPECT_THROW(coupling_variant_check(w, 5, CouplingFamily::plus_half), std::invalid_argument);
}

TEST(bch, three_half_family_signs) {
    const auto report = coupling_variant_report(sample_word(), 0, CouplingFamily::plus_three_half);
    ASSERT_EQ(report.forms.size(), 3u);
    // Three coupled involutions flip the sign; the merged tail has two.
    EXPECT_EQ(report.forms[0].sign, -1);
    EXPECT_EQ(report.forms[1].sign, -1);
    EXPECT_EQ(report.forms[2].sign, 1);

    // Without the sign the 3-factor product is -U, not U.
    const Matrix u = evolution_permutation(sample_word()).to_matrix();
    Matrix product = Matrix::identity(16);
    for (const auto& [i, j] : sample_word().factors) {
        product = product * exp_involution(exchange(4, i, j), 1.5 * kPi);
    }
    product *= kI * kI * kI;
    EXPECT_LE(max_abs_diff(product, -u), 1e-12);
}

TEST(bch, coupling_angle_values) {
    EXPECT_DOUBLE_EQ(coupling_angle(0, CouplingFamily::plus_half), kPi / 2);
    EXPECT_DOUBLE_EQ(coupling_angle(1, CouplingFamily::plus_half), 2.5 * kPi);
    EXPECT_DOUBLE_EQ(coupling_angle(-1, CouplingFamily::plus_three_half), -0.5 * kPi);
}

TEST(bch, series_truncated_commuting_arguments) {
    const Matrix x = exchange(4, 1, 2) * Complex(0.0, -0.7);
    const Matrix y = exchange(4, 3, 4) * Complex(0.0, 0.2);
    for (int order = 1; order <= 4; ++order) {
        EXPECT_LE(max_abs_diff(bch_series_truncated(x, y, order), x + y), 1e-15);
    }
    const Matrix zero(3);
    EXPECT_EQ(bch_series_truncated(zero, zero, 4), zero);
}

TEST(bch, series_truncated_errors) {
    EXPECT_THROW(bch_series_truncated(Matrix(2), Matrix(2), 0), std::invalid_argument);
    EXPECT_THROW(bch_series_truncated(Matrix(2), Matrix(2), 5), std::invalid_argument);
    EXPECT_THROW(bch_series_truncated(Matrix(2), Matrix(3), 2), DimensionMismatch);
}

TEST(bch, series_terms_by_order) {
    std::mt19937 rng(31);
    const Matrix x = random_matrix(3, 1.0, rng);
    const Matrix y = random_matrix(3, 1.0, rng);
    const Matrix xy = commutator(x, y);
    EXPECT_LE(max_abs_diff(bch_series_truncated(x, y, 2) - bch_series_truncated(x, y, 1), xy * 0.5), 1e-15);
    const Matrix third = (commutator(x, xy) + commutator(y, commutator(y, x))) * (1.0 / 12.0);
    EXPECT_LE(max_abs_diff(bch_series_truncated(x, y, 3) - bch_series_truncated(x, y, 2), third), 1e-15);
    const Matrix fourth = commutator(y, commutator(x, xy)) * (-1.0 / 24.0);
    EXPECT_LE(max_abs_diff(bch_series_truncated(x, y, 4) - bch_series_truncated(x, y, 3), fourth), 1e-15);
}

TEST(bch, series_fails_for_exchange_couplings) {
    const Matrix x = exchange(3, 2, 3) * Complex(0.0, -kPi / 2);
    const Matrix y = exchange(3, 1, 2) * Complex(0.0, -kPi / 2);
    const Matrix z = bch_series_truncated(x, y, 4);
    EXPECT_GT(max_abs(expm(z) - expm(x) * expm(y)), 1e-3);
}

TEST(bch, series_converges_for_small_arguments) {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix x = random_matrix(4, 0.05, rng);
        const Matrix y = random_matrix(4, 0.05, rng);
        EXPECT_LE(max_abs_diff(expm(bch_series_truncated(x, y, 4)), expm(x) * expm(y)), 1e-8);
    }
}

TEST(bch, leakage_examples) {
    EXPECT_EQ(superposition_leakage(Matrix::identity(4)), 0.0);
    EXPECT_EQ(superposition_leakage(evolution_permutation(sample_word()).to_matrix()), 0.0);
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(superposition_leakage(Matrix::from_rows({{h, h}, {h, -h}})), 0.5, 1e-15);
    EXPECT_THROW(superposition_leakage(Matrix::identity(2) * 2.0), NonUnitary);
}

TEST(bch, leakage_invariances) {
    // A generic unitary: exp of a random anti-Hermitian matrix.
    std::mt19937 rng(41);
    const Matrix a = random_matrix(8, 1.0, rng);
    const Matrix unitary = expm((a - dagger(a)) * 0.5);
    const double base = superposition_leakage(unitary);
    EXPECT_GT(base, 0.0);
    const Matrix left = evolution_permutation(parse_word("P12 P23", 3)).to_matrix();
    const Matrix right = exchange(3, 1, 3);
    EXPECT_NEAR(superposition_leakage(left * unitary), base, 1e-12);
    EXPECT_NEAR(superposition_leakage(unitary * right), base, 1e-12);
    EXPECT_NEAR(superposition_leakage(unitary * std::polar(1.0, 0.77)), base, 1e-12);
}

TEST(bch, perturbation_at_zero_is_exact) {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        ExchangeWord word{n, {}};
        for (std::size_t f = 0, len = 1 + rng() % 5; f < len; ++f) {
            const int i = 1 + static_cast<int>(rng() % n);
            int j = 1 + static_cast<int>(rng() % (n - 1));
            if (j >= i) ++j;
            word.factors.emplace_back(i, j);
        }
        const Matrix m = perturb_coupling(word, {});
        EXPECT_LE(max_abs_diff(m, evolution_permutation(word).to_matrix()), 1e-12);
        EXPECT_LE(superposition_leakage(m), 1e-12);
        // Shifting the coupling by a multiple of 2 pi changes nothing.
        EXPECT_LE(max_abs_diff(perturb_coupling(word, {0.0, 2, std::nullopt}), m), 1e-12);
    }
}

TEST(bch, perturbation_produces_superpositions) {
    const ExchangeWord w = sample_word();
    double previous = superposition_leakage(perturb_coupling(w, {0.0, 0, std::nullopt}));
    EXPECT_LE(previous, 1e-12);
    for (double eps : {0.005, 0.01, 0.02}) {
        const double leakage = superposition_leakage(perturb_coupling(w, {eps, 0, std::nullopt}));
        EXPECT_GT(leakage, previous);
        previous = leakage;
    }
    EXPECT_GT(superposition_leakage(perturb_coupling(w, {0.01, 0, std::nullopt})), 1e-6);
}

TEST(bch, perturbation_half_turn_on_single_factor) {
    const Matrix m = perturb_coupling(parse_word("P12", 2), {kPi / 2, 0, std::nullopt});
    EXPECT_LE(max_abs_diff(m, Matrix::identity(4) * (-kI)), 1e-15);
    EXPECT_EQ(superposition_leakage(m), 0.0);
}

TEST(bch, per_factor_perturbation) {
    const ExchangeWord w = sample_word();
    const Matrix uniform = perturb_coupling(w, {0.01, 0, std::nullopt});
    const Matrix explicit_uniform = perturb_coupling(w, {0.0, 0, std::vector<double>{0.01, 0.01, 0.01}});
    EXPECT_LE(max_abs_diff(uniform, explicit_uniform), 1e-15);
    // Only the last factor perturbed.
    const Matrix tail_only = perturb_coupling(w, {0.0, 0, std::vector<double>{0.0, 0.0, 0.01}});
    EXPECT_GT(superposition_leakage(tail_only), 0.0);
    EXPECT_THROW(perturb_coupling(w, {0.0, 0, std::vector<double>{0.1}}), std::invalid_argument);
}
