#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace permlog {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Entrywise tolerances used by every verification in the toolkit.
///
/// `eq_tol` is an absolute bound on |A_ij - B_ij| for matrix equality.
/// `unitarity_tol` bounds the deviation from U U^dagger = 1 (and P^2 = 1 for
/// involutions). Both must be strictly positive.
struct ToleranceConfig {
    double eq_tol = 1e-10;
    double unitarity_tol = 1e-12;

    /// Throws std::invalid_argument unless both tolerances are positive and finite.
    void validate() const;

    /// Defaults, with `eq_tol` overridden by the PERMLOG_TOL environment
    /// variable when it is set.
    static ToleranceConfig from_env();
};

class DimensionMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class InvolutionViolation : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Square complex matrix, row-major.
class Matrix {
   public:
    /// dim x dim zero matrix. dim must be at least 1.
    explicit Matrix(std::size_t dim);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const Complex> entries);
    static Matrix diagonal(std::span<const double> entries);
    /// Throws on ragged or non-square input and on non-finite entries.
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static Matrix from_rows(const std::vector<std::vector<Complex>>& rows);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<const Complex> data() const { return data_; }

    bool is_finite() const;
    Complex trace() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scalar);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= -1.0; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix& other) const = default;

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& a);
Matrix transpose(const Matrix& a);
/// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);
/// Kronecker product; dimension is a.dim() * b.dim().
Matrix kron(const Matrix& a, const Matrix& b);
/// a^k for k >= 0 by repeated squaring.
Matrix power(const Matrix& a, unsigned k);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);
/// max_ij |a_ij|.
double max_abs(const Matrix& a);
/// Induced infinity norm (maximum absolute row sum).
double norm_inf(const Matrix& a);

bool approx_equal(const Matrix& a, const Matrix& b, double tol);
bool is_unitary(const Matrix& a, double tol);
bool is_self_adjoint(const Matrix& a, double tol);

/// Matrix exponential by scaling and squaring around a Taylor series.
///
/// The argument is halved until its infinity norm is at most 1/2, the series
/// is summed until a term drops below 1e-18 in infinity norm, and the result
/// is squared back.
Matrix expm(const Matrix& a);

/// exp(-i theta P) = cos(theta) 1 - i sin(theta) P for an involution P.
/// Throws InvolutionViolation if max|P^2 - 1| exceeds `unitarity_tol`.
Matrix exp_involution(const Matrix& p, double theta, double unitarity_tol = ToleranceConfig{}.unitarity_tol);

/// True iff every row and column holds exactly one entry with |a| within
/// `tol` of 1 and all other entries are below `tol` in magnitude.
bool is_permutation_matrix(const Matrix& a, double tol);

std::string to_string(const Matrix& a, int precision = 6);

}  // namespace permlog
