#include "qrmimo/matrix.hpp"

namespace qrmimo {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b, CostLedger& ledger) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions do not match");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += metered_mul(a(i, k), b(k, j), ledger);
            c(i, j) = acc;
        }
    }
    return c;
}

ComplexMatrix hermitian_transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = std::conj(a(i, j));
    return t;
}

std::vector<Complex> apply_hermitian(const ComplexMatrix& a, std::span<const Complex> y,
                                     CostLedger& ledger) {
    if (y.size() != a.rows())
        throw DimensionError("apply_hermitian: vector length does not match rows");
    std::vector<Complex> out(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < a.rows(); ++k)
            acc += metered_mul(std::conj(a(k, j)), y[k], ledger);
        out[j] = acc;
    }
    return out;
}

double column_norm(const ComplexMatrix& a, std::size_t col, std::size_t row_from,
                   std::size_t row_to, CostLedger& ledger) {
    if (col >= a.cols() || row_to >= a.rows() || row_from > row_to)
        throw DimensionError("column_norm: index range out of bounds");
    double acc = 0.0;
    for (std::size_t k = row_from; k <= row_to; ++k) {
        const Complex& z = a(k, col);
        acc += metered_mul(z.real(), z.real(), ledger);
        acc += metered_mul(z.imag(), z.imag(), ledger);
    }
    return metered_sqrt(acc, ledger);
}

double vector_norm(std::span<const Complex> v, CostLedger& ledger) {
    double acc = 0.0;
    for (const Complex& z : v) {
        acc += metered_mul(z.real(), z.real(), ledger);
        acc += metered_mul(z.imag(), z.imag(), ledger);
    }
    return metered_sqrt(acc, ledger);
}

}  // namespace qrmimo
