#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qrmimo/qrd.hpp"

namespace qrmimo {

// Closed-form MUL count for one factorization of an n_r x n_t complex
// matrix. Defined for STGS, Householder, Givens, PGR (same row as Givens)
// and RCPGR; evaluates the polynomial in exact integer arithmetic (the
// fractional coefficients cancel for integral shapes).
std::int64_t mul_count_formula(QrdMethod m, int n_r, int n_t);

struct ComplexityReport {
    QrdMethod method = QrdMethod::Stgs;
    int n_r = 0;
    int n_t = 0;
    std::int64_t formula_mul = 0;
    std::uint64_t measured_mul = 0;
    bool include_ytilde = true;
    double relative_gap = 0.0;
};

// Runs the engine on a seeded random channel and compares the instrumented
// ledger with the closed form. The closed forms cover the y_tilde product,
// so reconciliation defaults to including it; with include_ytilde = false
// the known 4*n_r*n_t charge of the Q^H y product is deducted from the
// measurement (no deduction applies to RCPGR, which never forms it
// separately).
ComplexityReport reconcile(QrdMethod m, int n_r, int n_t, std::uint64_t seed,
                           bool include_ytilde = true);

struct Shape {
    int n_r = 0;
    int n_t = 0;
};

std::vector<ComplexityReport> complexity_table(std::span<const Shape> sizes,
                                               std::span<const QrdMethod> methods,
                                               bool include_ytilde, std::uint64_t seed);

}  // namespace qrmimo
