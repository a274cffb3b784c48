#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "qrmimo/errors.hpp"

namespace qrmimo {

using Complex = std::complex<double>;

// Tally of real arithmetic under the MUL cost model: a real multiplication
// counts 1 MUL, a real addition 0, a real division 16 and a real square
// root 32. Complex operations are charged through their real primitives:
// complex*complex = 4 real_mul, complex*real = 2 real_mul, complex/real =
// 2 real_div.
struct CostLedger {
    std::uint64_t real_mul = 0;
    std::uint64_t real_div = 0;
    std::uint64_t real_sqrt = 0;

    std::uint64_t mul_count() const {
        return real_mul + 16 * real_div + 32 * real_sqrt;
    }

    CostLedger& operator+=(const CostLedger& o) {
        real_mul += o.real_mul;
        real_div += o.real_div;
        real_sqrt += o.real_sqrt;
        return *this;
    }

    bool operator==(const CostLedger&) const = default;
};

// Metered scalar primitives. Each returns exactly the value of the plain
// expression; only the ledger distinguishes them from unmetered code.

inline double metered_mul(double a, double b, CostLedger& ledger) {
    ledger.real_mul += 1;
    const double r = a * b;
    if (!std::isfinite(r)) throw NumericOverflowError("real multiply overflowed");
    return r;
}

inline Complex metered_mul(const Complex& a, const Complex& b, CostLedger& ledger) {
    ledger.real_mul += 4;
    const Complex r = a * b;
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NumericOverflowError("complex multiply overflowed");
    return r;
}

// One operand known real: two component products.
inline Complex metered_mul(const Complex& a, double b, CostLedger& ledger) {
    ledger.real_mul += 2;
    const Complex r(a.real() * b, a.imag() * b);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NumericOverflowError("complex*real multiply overflowed");
    return r;
}

inline double metered_div(double a, double b, CostLedger& ledger) {
    ledger.real_div += 1;
    const double r = a / b;
    if (!std::isfinite(r)) throw NumericOverflowError("real divide overflowed");
    return r;
}

// Scaling a complex value by a real divisor: two component divisions.
inline Complex metered_div(const Complex& a, double b, CostLedger& ledger) {
    ledger.real_div += 2;
    const Complex r(a.real() / b, a.imag() / b);
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw NumericOverflowError("complex/real divide overflowed");
    return r;
}

inline double metered_sqrt(double x, CostLedger& ledger) {
    ledger.real_sqrt += 1;
    const double r = std::sqrt(x);
    if (!std::isfinite(r)) throw NumericOverflowError("square root of invalid value");
    return r;
}

}  // namespace qrmimo
