#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "qrmimo/complexity.hpp"

using namespace qrmimo;

TEST_CASE("closed forms reproduce the reference 8x8 values") {
    CHECK(mul_count_formula(QrdMethod::Stgs, 8, 8) == 4480);
    CHECK(mul_count_formula(QrdMethod::Householder, 8, 8) == 4360);
    CHECK(mul_count_formula(QrdMethod::Givens, 8, 8) == 10336);
    CHECK(mul_count_formula(QrdMethod::Pgr, 8, 8) == 10336);
    CHECK(mul_count_formula(QrdMethod::Rcpgr, 8, 8) == 6944);
}

TEST_CASE("hand-evaluated spot values at other shapes") {
    // 4*2^2*2 + 34*2*2 + 32*2
    CHECK(mul_count_formula(QrdMethod::Stgs, 2, 2) == 232);
    // (24*2*4 + 18*4 - 8*8 + 9*4 + 395*2) / 3
    CHECK(mul_count_formula(QrdMethod::Householder, 2, 2) == 342);
    // (51*8 - 3*8 + 402*4 - 7*8 - 219*4 - 212*2) / 3
    CHECK(mul_count_formula(QrdMethod::Givens, 2, 2) == 212);
    // (3*8 + 21*8 + 462*4 - 7*8 - 243*4 - 236*2) / 3
    CHECK(mul_count_formula(QrdMethod::Rcpgr, 2, 2) == 180);
    CHECK(mul_count_formula(QrdMethod::Rcpgr, 1, 1) == 0);
    CHECK(mul_count_formula(QrdMethod::Givens, 1, 1) == 4);
}

TEST_CASE("polynomials stay integral for every integer shape up to 16") {
    for (int nt = 1; nt <= 16; ++nt)
        for (int nr = nt; nr <= 16; ++nr)
            for (QrdMethod m : {QrdMethod::Stgs, QrdMethod::Householder, QrdMethod::Givens,
                                QrdMethod::Pgr, QrdMethod::Rcpgr})
                CHECK_NOTHROW(mul_count_formula(m, nr, nt));
}

TEST_CASE("formula ordering at 8x8 and monotonicity over the square sweep") {
    CHECK(mul_count_formula(QrdMethod::Householder, 8, 8) <
          mul_count_formula(QrdMethod::Stgs, 8, 8));
    CHECK(mul_count_formula(QrdMethod::Stgs, 8, 8) <
          mul_count_formula(QrdMethod::Rcpgr, 8, 8));
    CHECK(mul_count_formula(QrdMethod::Rcpgr, 8, 8) <
          mul_count_formula(QrdMethod::Givens, 8, 8));
    CHECK(mul_count_formula(QrdMethod::Givens, 8, 8) ==
          mul_count_formula(QrdMethod::Pgr, 8, 8));

    for (QrdMethod m : {QrdMethod::Stgs, QrdMethod::Householder, QrdMethod::Givens,
                        QrdMethod::Rcpgr}) {
        std::int64_t prev = 0;
        for (int s = 2; s <= 8; ++s) {
            const std::int64_t v = mul_count_formula(m, s, s);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("unknown or invalid formula queries are rejected") {
    CHECK_THROWS_AS(mul_count_formula(QrdMethod::Clgs, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(mul_count_formula(QrdMethod::Stgs, 2, 4), DimensionError);
    CHECK_THROWS_AS(mul_count_formula(QrdMethod::Stgs, 4, 0), DimensionError);
}

TEST_CASE("instrumented counts sit within 10% of the closed forms on squares 2..8") {
    for (int s = 2; s <= 8; ++s) {
        for (QrdMethod m : {QrdMethod::Stgs, QrdMethod::Householder, QrdMethod::Givens,
                            QrdMethod::Pgr, QrdMethod::Rcpgr}) {
            CAPTURE(method_name(m));
            CAPTURE(s);
            const ComplexityReport rep = reconcile(m, s, s, 20240501);
            CHECK(rep.relative_gap <= 0.10);
        }
    }
}

TEST_CASE("STGS instrumentation matches its closed form exactly") {
    for (int s = 2; s <= 8; ++s) {
        const ComplexityReport rep = reconcile(QrdMethod::Stgs, s, s, 7);
        CHECK(rep.measured_mul == static_cast<std::uint64_t>(rep.formula_mul));
    }
}

TEST_CASE("GR and PGR measure identically; RCPGR measures below GR") {
    for (int s = 2; s <= 8; ++s) {
        const ComplexityReport gr = reconcile(QrdMethod::Givens, s, s, 11);
        const ComplexityReport pgr = reconcile(QrdMethod::Pgr, s, s, 11);
        const ComplexityReport rc = reconcile(QrdMethod::Rcpgr, s, s, 11);
        CHECK(gr.measured_mul == pgr.measured_mul);
        CHECK(rc.measured_mul < gr.measured_mul);  // GR's count includes its Q^H y product
    }
}

TEST_CASE("reconcile is deterministic in (method, shape, seed)") {
    const ComplexityReport a = reconcile(QrdMethod::Householder, 6, 4, 99);
    const ComplexityReport b = reconcile(QrdMethod::Householder, 6, 4, 99);
    CHECK(a.measured_mul == b.measured_mul);
    const ComplexityReport c = reconcile(QrdMethod::Householder, 6, 4, 100);
    CHECK(a.measured_mul == c.measured_mul);  // counts depend on shape only
}

TEST_CASE("reconcile at the smallest shape is well-formed") {
    for (QrdMethod m : {QrdMethod::Stgs, QrdMethod::Householder, QrdMethod::Givens,
                        QrdMethod::Pgr, QrdMethod::Rcpgr}) {
        const ComplexityReport rep = reconcile(m, 1, 1, 3);
        CHECK(rep.formula_mul >= 0);
        CHECK(rep.relative_gap >= 0.0);
    }
    // A 1x1 STGS is one norm plus one normalization plus the y product.
    const ComplexityReport one = reconcile(QrdMethod::Stgs, 1, 1, 3);
    CHECK(one.measured_mul == 2 + 32 + 32 + 4);
    CHECK(one.measured_mul == static_cast<std::uint64_t>(one.formula_mul));
}

TEST_CASE("excluding the y product widens the gap but never the GR/PGR tie") {
    const ComplexityReport incl = reconcile(QrdMethod::Stgs, 8, 8, 5, true);
    const ComplexityReport excl = reconcile(QrdMethod::Stgs, 8, 8, 5, false);
    CHECK(incl.measured_mul == excl.measured_mul + 4 * 8 * 8);
    // RCPGR folds the y column into the sweep, so both modes coincide.
    const ComplexityReport rci = reconcile(QrdMethod::Rcpgr, 8, 8, 5, true);
    const ComplexityReport rce = reconcile(QrdMethod::Rcpgr, 8, 8, 5, false);
    CHECK(rci.measured_mul == rce.measured_mul);
}

TEST_CASE("RCPGR ledger equals the rotation-by-rotation tally: no Q workspace cost") {
    for (int s : {2, 4, 8}) {
        // Every charge of the augmented sweep, summed task by task: two norm
        // evaluations over the pivot sub-column, four divisions for the
        // rotation entries, one row-pair update across the remaining columns.
        std::uint64_t mul = 0, div = 0, sqrt = 0;
        for (int col = 0; col <= s; ++col) {
            for (int target = col + 1; target < s; ++target) {
                mul += 2 * 2 * (target - col + 1);
                sqrt += 2;
                div += 4;
                mul += 16 * (s + 1 - col);
            }
        }
        const ComplexityReport rep = reconcile(QrdMethod::Rcpgr, s, s, 31);
        CHECK(rep.measured_mul == mul + 16 * div + 32 * sqrt);
    }
}

TEST_CASE("complexity_table covers the sweep row-by-row") {
    std::array<Shape, 7> sizes{};
    for (int s = 2; s <= 8; ++s) sizes[s - 2] = {s, s};
    const std::array<QrdMethod, 5> methods{QrdMethod::Stgs, QrdMethod::Householder,
                                           QrdMethod::Givens, QrdMethod::Pgr,
                                           QrdMethod::Rcpgr};
    const auto rows = complexity_table(sizes, methods, true, 1);
    CHECK(rows.size() == 35);
    const auto none = complexity_table(sizes, std::span<const QrdMethod>{}, true, 1);
    CHECK(none.empty());
}
