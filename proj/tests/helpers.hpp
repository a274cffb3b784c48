#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qrmimo/channel.hpp"
#include "qrmimo/matrix.hpp"
#include "qrmimo/qrd.hpp"

namespace qrmimo::test {

inline ComplexMatrix random_matrix(std::size_t n_r, std::size_t n_t, std::uint64_t seed) {
    Rng rng(seed);
    return gen_channel(n_r, n_t, rng);
}

inline std::vector<Complex> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return gen_noise(n, 1.0, rng);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Unmetered reference product for oracles.
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

inline double reconstruction_error(const ComplexMatrix& h, const QRFactorization& f) {
    return max_abs_diff(h, naive_matmul(*f.q, f.r));
}

inline double unitarity_error(const QRFactorization& f) {
    const ComplexMatrix qh = hermitian_transpose(*f.q);
    const ComplexMatrix g = naive_matmul(qh, *f.q);
    return max_abs_diff(g, ComplexMatrix::identity(g.rows()));
}

inline bool strictly_lower_is_zero(const ComplexMatrix& r) {
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < i && j < r.cols(); ++j)
            if (r(i, j) != Complex(0.0, 0.0)) return false;
    return true;
}

}  // namespace qrmimo::test
