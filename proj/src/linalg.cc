#include "permlog/linalg.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace permlog {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
    }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void ToleranceConfig::validate() const {
    if (!(eq_tol > 0.0) || !std::isfinite(eq_tol)) {
        throw std::invalid_argument("eq_tol must be positive and finite");
    }
    if (!(unitarity_tol > 0.0) || !std::isfinite(unitarity_tol)) {
        throw std::invalid_argument("unitarity_tol must be positive and finite");
    }
}

ToleranceConfig ToleranceConfig::from_env() {
    ToleranceConfig cfg;
    if (const char* env = std::getenv("PERMLOG_TOL"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        double value = std::strtod(env, &end);
        if (end == env || *end != '\0') {
            throw std::invalid_argument(std::string("PERMLOG_TOL is not a number: ") + env);
        }
        cfg.eq_tol = value;
    }
    cfg.validate();
    return cfg;
}

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) {
        throw std::invalid_argument("matrix dimension must be at least 1");
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        m(k, k) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
    Matrix m(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m(k, k) = entries[k];
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m(k, k) = entries[k];
    }
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::vector<std::vector<Complex>> copy;
    for (const auto& row : rows) {
        copy.emplace_back(row);
    }
    return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    Matrix m(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
            throw DimensionMismatch("from_rows: matrix must be square");
        }
        for (std::size_t c = 0; c < rows.size(); ++c) {
            if (!finite(rows[r][c])) {
                throw std::invalid_argument("from_rows: non-finite entry");
            }
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

bool Matrix::is_finite() const {
    return std::all_of(data_.begin(), data_.end(), finite);
}

Complex Matrix::trace() const {
    Complex t = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        t += (*this)(k, k);
    }
    return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_dim(*this, other, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_dim(*this, other, "subtract");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
    for (auto& z : data_) {
        z *= scalar;
    }
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }

Matrix multiply(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "multiply");
    const std::size_t n = a.dim();
    Matrix out(n);
    // i-k-j order keeps the inner loop contiguous in both b and out.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix dagger(const Matrix& a) {
    Matrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            out(j, i) = a(i, j);
        }
    }
    return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "commutator");
    return multiply(a, b) - multiply(b, a);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    Matrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

Matrix power(const Matrix& a, unsigned k) {
    Matrix result = Matrix::identity(a.dim());
    Matrix base = a;
    while (k > 0) {
        if (k & 1u) {
            result = multiply(result, base);
        }
        k >>= 1u;
        if (k > 0) {
            base = multiply(base, base);
        }
    }
    return result;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    }
    return worst;
}

double max_abs(const Matrix& a) {
    double worst = 0.0;
    for (Complex z : a.data()) {
        worst = std::max(worst, std::abs(z));
    }
    return worst;
}

double norm_inf(const Matrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            row += std::abs(a(i, j));
        }
        worst = std::max(worst, row);
    }
    return worst;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    return a.dim() == b.dim() && max_abs_diff(a, b) <= tol;
}

bool is_unitary(const Matrix& a, double tol) {
    return approx_equal(multiply(a, dagger(a)), Matrix::identity(a.dim()), tol);
}

bool is_self_adjoint(const Matrix& a, double tol) { return approx_equal(a, dagger(a), tol); }

Matrix expm(const Matrix& a) {
    if (!a.is_finite()) {
        throw std::invalid_argument("expm: non-finite input");
    }
    int squarings = 0;
    double norm = norm_inf(a);
    Matrix scaled = a;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        scaled *= std::ldexp(1.0, -squarings);
    }

    const std::size_t n = a.dim();
    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    // With norm <= 1/2 the terms fall below 1e-18 after about 20 steps; the
    // cap only guards against pathological rounding.
    for (int k = 1; k <= 64; ++k) {
        term = multiply(term, scaled);
        term *= 1.0 / k;
        sum += term;
        if (norm_inf(term) < 1e-18) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        sum = multiply(sum, sum);
    }
    return sum;
}

Matrix exp_involution(const Matrix& p, double theta, double unitarity_tol) {
    const double deviation = max_abs_diff(multiply(p, p), Matrix::identity(p.dim()));
    if (deviation > unitarity_tol) {
        throw InvolutionViolation("exp_involution: P^2 differs from identity by " + std::to_string(deviation));
    }
    return Matrix::identity(p.dim()) * std::cos(theta) + p * Complex(0.0, -std::sin(theta));
}

bool is_permutation_matrix(const Matrix& a, double tol) {
    const std::size_t n = a.dim();
    std::vector<int> col_hits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int row_hits = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double mag = std::abs(a(i, j));
            if (std::abs(mag - 1.0) <= tol) {
                ++row_hits;
                ++col_hits[j];
            } else if (mag >= tol) {
                return false;
            }
        }
        if (row_hits != 1) {
            return false;
        }
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

std::string to_string(const Matrix& a, int precision) {
    std::ostringstream out;
    out.precision(precision);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Complex z = a(i, j);
            out << (j == 0 ? "[" : ", ") << z.real();
            if (z.imag() != 0.0) {
                out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
            }
        }
        out << "]" << (i + 1 == a.dim() ? "]" : "\n");
    }
    return out.str();
}

}  // namespace permlog
