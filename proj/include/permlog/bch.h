#pragma once

// Terminating Baker-Campbell-Hausdorff identities for products of exchange
// operators, the generic truncated series for contrast, and a probe for how
// far a perturbed product is from a (phased) permutation.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permlog/dynamics.h"
#include "permlog/linalg.h"

namespace permlog {

class PreconditionViolation : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class NonUnitary : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

struct BchChainResult {
    /// Plain product of the exchange matrices.
    Matrix baseline;
    /// Labelled factored and single-exponential forms, in the order listed in
    /// bch_chain.
    std::vector<std::pair<std::string, Matrix>> forms;
    /// Largest entrywise distance of any form from the baseline.
    double max_deviation = 0.0;
};

/// Rewrites a word P_1 ... P_n (n >= 2) with coupling pi/2 as
///
///   "product"          i^n     exp(-i pi/2 P_1) ... exp(-i pi/2 P_n)
///   "tail_sum"         i^n     exp(-i pi/2 P_1) ... exp(-i pi/2 (P_{n-1} + P_n))
///   "tail_product"     i^{n-1} exp(-i pi/2 P_1) ... exp(-i pi/2 P_{n-1} P_n)
///   "hamiltonian"      exp(-i T sum_k h_k U^k)   (uniform polynomial form)
///
/// Throws PreconditionViolation if the two rightmost factors do not commute.
BchChainResult bch_chain(const ExchangeWord& word, double t);

enum class CouplingFamily { plus_half, plus_three_half };

/// (2k + 1/2) pi or (2k + 3/2) pi.
double coupling_angle(int k, CouplingFamily family);

struct CouplingVariantForm {
    std::string label;
    /// +1 for plus_half; (-1)^m for plus_three_half, m = number of exchange
    /// involutions carrying the coupling in that form.
    int sign = 1;
    double deviation = 0.0;
};

struct CouplingVariantResult {
    std::vector<CouplingVariantForm> forms;
    bool passed = false;
};

/// Re-evaluates the three factored forms of bch_chain with the coupling pi/2
/// replaced by coupling_angle(k, family) and compares each with sign * U.
/// Requires |k| <= 4 and a commuting tail (PreconditionViolation otherwise).
CouplingVariantResult coupling_variant_report(const ExchangeWord& word, int k, CouplingFamily family,
                                              double tol = ToleranceConfig{}.eq_tol);
bool coupling_variant_check(const ExchangeWord& word, int k, CouplingFamily family,
                            double tol = ToleranceConfig{}.eq_tol);

/// Generic BCH series for log(exp(X) exp(Y)) through `order` (1..4):
///   X + Y + [X,Y]/2 + ([X,[X,Y]] + [Y,[Y,X]])/12 - [Y,[X,[X,Y]]]/24.
Matrix bch_series_truncated(const Matrix& x, const Matrix& y, int order);

/// max_j (1 - max_i |M_ij|^2). Zero exactly on phased permutation matrices.
/// Throws NonUnitary if M is not unitary within `unitarity_tol`.
double superposition_leakage(const Matrix& m, double unitarity_tol = ToleranceConfig{}.unitarity_tol);

struct PerturbationConfig {
    /// Offset added to the coupling, radians.
    double epsilon = 0.0;
    /// Base coupling is (2k + 1/2) pi.
    int k = 0;
    /// Optional per-factor offsets; overrides `epsilon` when present.
    std::optional<std::vector<double>> per_factor;
};

/// prod_f i exp(-i (theta_k + eps_f) P_f) in word order. At eps = 0 this is
/// the exact permutation product.
Matrix perturb_coupling(const ExchangeWord& word, const PerturbationConfig& cfg);

}  // namespace permlog
