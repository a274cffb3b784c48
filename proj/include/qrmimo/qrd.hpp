#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qrmimo/matrix.hpp"

namespace qrmimo {

enum class QrdMethod { Clgs, Stgs, Householder, Givens, Pgr, Rcpgr };

const char* method_name(QrdMethod m);
std::optional<QrdMethod> parse_method(std::string_view name);

// Norm threshold below which inputs are treated as rank deficient.
inline constexpr double kRankTol = 1e-12;

struct QRFactorization {
    std::optional<ComplexMatrix> q;  // n_r x n_t; absent for RCPGR
    ComplexMatrix r;                 // n_t x n_t, upper triangular
    std::vector<Complex> y_tilde;    // length n_t
    CostLedger ledger;
    QrdMethod method = QrdMethod::Stgs;
};

// Reflector with v scaled so that P = I - v v^H is unitary; beta is the
// value the reflection places in the leading position.
struct HouseholderReflector {
    std::vector<Complex> v;
    Complex beta;
};

HouseholderReflector house(std::span<const Complex> x, CostLedger& ledger);

// 2x2 unitary rotation G = (1/r)[conj(a), conj(b); -b, a] with
// r = sqrt(|a|^2 + |b|^2), so that G*(a,b)^T = (r,0)^T with r real positive.
struct GivensRotation {
    Complex g11, g12, g21, g22;
    double r = 0.0;
};

// Standalone rotation from an explicit pair. Charged 4 real_mul + 1
// real_sqrt for |a|^2+|b|^2 and 4 real_div for the entries of G.
GivensRotation givens_params(const Complex& a, const Complex& b, CostLedger& ledger);

QRFactorization qrd_clgs(const ComplexMatrix& h, std::span<const Complex> y);
QRFactorization qrd_stgs(const ComplexMatrix& h, std::span<const Complex> y);
QRFactorization qrd_householder(const ComplexMatrix& h, std::span<const Complex> y);
QRFactorization qrd_givens(const ComplexMatrix& h, std::span<const Complex> y);
QRFactorization qrd_rcpgr(const ComplexMatrix& h, std::span<const Complex> y);

// Defined with the round schedule (see schedule.hpp); result and ledger
// match qrd_givens exactly.
QRFactorization qrd_pgr(const ComplexMatrix& h, std::span<const Complex> y);

QRFactorization factorize(QrdMethod m, const ComplexMatrix& h, std::span<const Complex> y);

// Phase-normalizes so diag(R) is real nonnegative: row i of R and y_tilde_i
// pick up conj(phase(r_ii)), column i of Q picks up phase(r_ii), leaving
// Q*R unchanged. Costs are charged to f.ledger.
QRFactorization canonicalize(QRFactorization f);

namespace detail {

// Rotation annihilating work(target, col) against pivot row `col`. The norm
// spans work(col..target, col) as the algorithm states it and is evaluated
// once for each of the two coefficients; the ledger reflects both.
GivensRotation annihilation_rotation(const ComplexMatrix& work, std::size_t col,
                                     std::size_t target, CostLedger& ledger);

// Row-pair update over columns [col_begin, col_end), 16 real_mul per column.
void apply_rotation_rows(ComplexMatrix& work, const GivensRotation& g, std::size_t row_a,
                         std::size_t row_b, std::size_t col_begin, std::size_t col_end,
                         CostLedger& ledger);

// Accumulates U <- U * G^H on the full column pair, 16 real_mul per row.
void apply_rotation_cols(ComplexMatrix& u, const GivensRotation& g, std::size_t col_a,
                         std::size_t col_b, CostLedger& ledger);

}  // namespace detail

}  // namespace qrmimo
