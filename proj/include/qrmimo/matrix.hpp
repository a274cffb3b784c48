#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qrmimo/ledger.hpp"

namespace qrmimo {

// Dense row-major complex matrix. Values are plain doubles; all sizes in
// play are small enough that no structured storage is worthwhile.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw DimensionError("matrix dimensions must be positive");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// C = A*B, charged 4*rows(A)*cols(A)*cols(B) real_mul.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b, CostLedger& ledger);

// Conjugate transpose; sign flips are free.
ComplexMatrix hermitian_transpose(const ComplexMatrix& a);

// A^H * y, charged 4*rows(A)*cols(A) real_mul.
std::vector<Complex> apply_hermitian(const ComplexMatrix& a, std::span<const Complex> y,
                                     CostLedger& ledger);

// Euclidean norm of column `col` over rows [row_from, row_to] inclusive.
// Charged 2*(row_to - row_from + 1) real_mul plus one real_sqrt.
double column_norm(const ComplexMatrix& a, std::size_t col, std::size_t row_from,
                   std::size_t row_to, CostLedger& ledger);

// Euclidean norm of a vector, same charging rule as column_norm.
double vector_norm(std::span<const Complex> v, CostLedger& ledger);

}  // namespace qrmimo
