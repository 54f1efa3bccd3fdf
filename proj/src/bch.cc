#include "permlog/bch.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "permlog/spin.h"

namespace permlog {

namespace {

std::vector<Matrix> factor_matrices(const ExchangeWord& word) {
    word.validate();
    std::vector<Matrix> out;
    out.reserve(word.factors.size());
    for (const auto& [i, j] : word.factors) {
        out.push_back(exchange_permutation(word.n_spins, i, j).matrix());
    }
    return out;
}

Matrix plain_product(const std::vector<Matrix>& factors) {
    Matrix out = Matrix::identity(factors.front().dim());
    for (const auto& p : factors) {
        out = out * p;
    }
    return out;
}

Complex i_pow(std::size_t n) {
    static constexpr Complex kPowers[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return kPowers[n % 4];
}

void require_commuting_tail(const std::vector<Matrix>& factors) {
    if (factors.size() < 2) {
        throw PreconditionViolation("tail forms need at least two factors");
    }
    const Matrix& a = factors[factors.size() - 2];
    const Matrix& b = factors.back();
    if (max_abs(commutator(a, b)) != 0.0) {
        throw PreconditionViolation("tail forms need the two rightmost factors to commute");
    }
}

// The three factored forms at coupling theta, each with its i^m prefactor.
struct FactoredForm {
    const char* label;
    Matrix value;
    std::size_t coupled_involutions;
};

std::vector<FactoredForm> factored_forms(const std::vector<Matrix>& factors, double theta) {
    const std::size_t n = factors.size();
    const std::size_t dim = factors.front().dim();

    Matrix head = Matrix::identity(dim);
    for (std::size_t f = 0; f + 2 < n; ++f) {
        head = head * exp_involution(factors[f], theta);
    }
    const Matrix& left = factors[n - 2];
    const Matrix& right = factors[n - 1];
    const Complex minus_i_theta(0.0, -theta);

    Matrix product = head * exp_involution(left, theta) * exp_involution(right, theta);
    Matrix tail_sum = head * expm((left + right) * minus_i_theta);
    Matrix tail_product = head * expm((left * right) * minus_i_theta);

    std::vector<FactoredForm> out;
    out.push_back({"product", product * i_pow(n), n});
    out.push_back({"tail_sum", tail_sum * i_pow(n), n});
    out.push_back({"tail_product", tail_product * i_pow(n - 1), n - 1});
    return out;
}

}  // namespace

BchChainResult bch_chain(const ExchangeWord& word, double t) {
    const std::vector<Matrix> factors = factor_matrices(word);
    require_commuting_tail(factors);

    BchChainResult result{plain_product(factors), {}, 0.0};
    for (auto& form : factored_forms(factors, std::numbers::pi / 2)) {
        result.forms.emplace_back(form.label, std::move(form.value));
    }

    const Permutation u = evolution_permutation(word);
    const UniformPolynomial poly = uniform_polynomial_form(u, t);
    const Matrix h = polynomial_in_permutation(u, poly.coefficients);
    result.forms.emplace_back("hamiltonian", expm(h * Complex(0.0, -t)));

    for (const auto& [label, m] : result.forms) {
        result.max_deviation = std::max(result.max_deviation, max_abs_diff(m, result.baseline));
    }
    return result;
}

double coupling_angle(int k, CouplingFamily family) {
    const double offset = family == CouplingFamily::plus_half ? 0.5 : 1.5;
    return (2.0 * k + offset) * std::numbers::pi;
}

CouplingVariantResult coupling_variant_report(const ExchangeWord& word, int k, CouplingFamily family, double tol) {
    if (k < -4 || k > 4) {
        throw std::invalid_argument("coupling family index k must satisfy |k| <= 4");
    }
    const std::vector<Matrix> factors = factor_matrices(word);
    require_commuting_tail(factors);
    const Matrix u = plain_product(factors);

    CouplingVariantResult result{{}, true};
    for (const auto& form : factored_forms(factors, coupling_angle(k, family))) {
        // exp(-i (2k + 3/2) pi P) = +i P, the negative of the pi/2 case, once
        // per coupled involution.
        const int sign =
            family == CouplingFamily::plus_half || form.coupled_involutions % 2 == 0 ? 1 : -1;
        const double deviation = max_abs_diff(form.value, u * static_cast<double>(sign));
        result.forms.push_back({form.label, sign, deviation});
        result.passed = result.passed && deviation <= tol;
    }
    return result;
}

bool coupling_variant_check(const ExchangeWord& word, int k, CouplingFamily family, double tol) {
    return coupling_variant_report(word, k, family, tol).passed;
}

Matrix bch_series_truncated(const Matrix& x, const Matrix& y, int order) {
    if (order < 1 || order > 4) {
        throw std::invalid_argument("BCH series order must be in 1..4, got " + std::to_string(order));
    }
    if (x.dim() != y.dim()) {
        throw DimensionMismatch("bch_series_truncated: dimension mismatch");
    }
    Matrix z = x + y;
    if (order < 2) {
        return z;
    }
    const Matrix xy = commutator(x, y);
    z += xy * 0.5;
    if (order < 3) {
        return z;
    }
    const Matrix x_xy = commutator(x, xy);
    z += (x_xy + commutator(y, commutator(y, x))) * (1.0 / 12.0);
    if (order < 4) {
        return z;
    }
    z -= commutator(y, x_xy) * (1.0 / 24.0);
    return z;
}

double superposition_leakage(const Matrix& m, double unitarity_tol) {
    if (!is_unitary(m, unitarity_tol)) {
        throw NonUnitary("superposition_leakage: matrix is not unitary within " + std::to_string(unitarity_tol));
    }
    double worst = 0.0;
    for (std::size_t col = 0; col < m.dim(); ++col) {
        double largest = 0.0;
        for (std::size_t row = 0; row < m.dim(); ++row) {
            largest = std::max(largest, std::norm(m(row, col)));
        }
        worst = std::max(worst, 1.0 - largest);
    }
    return std::clamp(worst, 0.0, 1.0);
}

Matrix perturb_coupling(const ExchangeWord& word, const PerturbationConfig& cfg) {
    const std::vector<Matrix> factors = factor_matrices(word);
    if (cfg.per_factor && cfg.per_factor->size() != factors.size()) {
        throw std::invalid_argument("per-factor perturbation needs one offset per factor");
    }
    const double base = coupling_angle(cfg.k, CouplingFamily::plus_half);
    Matrix out = Matrix::identity(factors.front().dim());
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const double eps = cfg.per_factor ? (*cfg.per_factor)[f] : cfg.epsilon;
        if (!std::isfinite(eps)) {
            throw std::invalid_argument("perturbation offset must be finite");
        }
        out = out * (exp_involution(factors[f], base + eps) * kI);
    }
    return out;
}

}  // namespace permlog
