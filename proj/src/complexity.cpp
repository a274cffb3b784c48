#include "qrmimo/complexity.hpp"

#include <stdexcept>

#include "qrmimo/channel.hpp"

namespace qrmimo {

namespace {

std::int64_t exact_third(std::int64_t numerator) {
    if (numerator % 3 != 0)
        throw std::logic_error("complexity polynomial did not reduce to an integer");
    return numerator / 3;
}

}  // namespace

std::int64_t mul_count_formula(QrdMethod m, int n_r, int n_t) {
    if (n_r < n_t || n_t < 1)
        throw DimensionError("mul_count_formula: requires n_r >= n_t >= 1");
    const std::int64_t r = n_r;
    const std::int64_t t = n_t;
    switch (m) {
        case QrdMethod::Stgs:
            return 4 * t * t * r + 34 * r * t + 32 * t;
        case QrdMethod::Householder:
            return exact_third(24 * r * t * t + 18 * r * t - 8 * t * t * t + 9 * t * t + 395 * t);
        case QrdMethod::Givens:
        case QrdMethod::Pgr:
            return exact_third(51 * r * r * t - 3 * r * t * t + 402 * r * t - 7 * t * t * t -
                               219 * t * t - 212 * t);
        case QrdMethod::Rcpgr:
            return exact_third(3 * r * r * t + 21 * r * t * t + 462 * r * t - 7 * t * t * t -
                               243 * t * t - 236 * t);
        case QrdMethod::Clgs:
            break;
    }
    throw std::invalid_argument("mul_count_formula: no closed form for this method");
}

ComplexityReport reconcile(QrdMethod m, int n_r, int n_t, std::uint64_t seed,
                           bool include_ytilde) {
    ComplexityReport rep;
    rep.method = m;
    rep.n_r = n_r;
    rep.n_t = n_t;
    rep.include_ytilde = include_ytilde;
    rep.formula_mul = mul_count_formula(m, n_r, n_t);

    // The instance depends on (seed, shape) only, so methods sharing a shape
    // factor the same matrix.
    Rng rng = Rng::substream(seed, (static_cast<std::uint64_t>(n_r) << 8) |
                                       static_cast<std::uint64_t>(n_t));
    const ComplexMatrix h = gen_channel(static_cast<std::size_t>(n_r),
                                        static_cast<std::size_t>(n_t), rng);
    const std::vector<Complex> y = gen_noise(static_cast<std::size_t>(n_r), 1.0, rng);

    const QRFactorization f = factorize(m, h, y);
    std::uint64_t measured = f.ledger.mul_count();
    if (!include_ytilde && m != QrdMethod::Rcpgr)
        measured -= 4ull * static_cast<std::uint64_t>(n_r) * static_cast<std::uint64_t>(n_t);
    rep.measured_mul = measured;

    const double formula = static_cast<double>(rep.formula_mul);
    rep.relative_gap = formula > 0.0
                           ? std::abs(static_cast<double>(measured) - formula) / formula
                           : 0.0;
    return rep;
}

std::vector<ComplexityReport> complexity_table(std::span<const Shape> sizes,
                                               std::span<const QrdMethod> methods,
                                               bool include_ytilde, std::uint64_t seed) {
    std::vector<ComplexityReport> rows;
    rows.reserve(sizes.size() * methods.size());
    for (const Shape& s : sizes)
        for (QrdMethod m : methods)
            rows.push_back(reconcile(m, s.n_r, s.n_t, seed, include_ytilde));
    return rows;
}

}  // namespace qrmimo
