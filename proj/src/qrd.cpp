#include "qrmimo/qrd.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace qrmimo {

const char* method_name(QrdMethod m) {
    switch (m) {
        case QrdMethod::Clgs: return "clgs";
        case QrdMethod::Stgs: return "stgs";
        case QrdMethod::Householder: return "hh";
        case QrdMethod::Givens: return "gr";
        case QrdMethod::Pgr: return "pgr";
        case QrdMethod::Rcpgr: return "rcpgr";
    }
    return "?";
}

std::optional<QrdMethod> parse_method(std::string_view name) {
    if (name == "clgs") return QrdMethod::Clgs;
    if (name == "stgs") return QrdMethod::Stgs;
    if (name == "hh") return QrdMethod::Householder;
    if (name == "gr") return QrdMethod::Givens;
    if (name == "pgr") return QrdMethod::Pgr;
    if (name == "rcpgr") return QrdMethod::Rcpgr;
    return std::nullopt;
}

namespace {

void check_factorization_input(const ComplexMatrix& h, std::span<const Complex> y) {
    if (h.rows() < h.cols())
        throw DimensionError("factorization requires n_r >= n_t");
    if (y.size() != h.rows())
        throw DimensionError("received vector length does not match n_r");
}

// Hermitian inner product of columns (a^H b) over rows [row_from, rows).
Complex column_dot(const ComplexMatrix& m, std::size_t col_a, std::size_t col_b,
                   std::size_t row_from, CostLedger& ledger) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = row_from; k < m.rows(); ++k)
        acc += metered_mul(std::conj(m(k, col_a)), m(k, col_b), ledger);
    return acc;
}

}  // namespace

QRFactorization qrd_stgs(const ComplexMatrix& h, std::span<const Complex> y) {
    check_factorization_input(h, y);
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();

    QRFactorization f;
    f.method = QrdMethod::Stgs;
    CostLedger& ledger = f.ledger;

    ComplexMatrix q = h;
    ComplexMatrix r(nt, nt);
    for (std::size_t i = 0; i < nt; ++i) {
        const double norm = column_norm(q, i, 0, nr - 1, ledger);
        if (norm < kRankTol)
            throw RankDeficiencyError("stgs: column norm below rank threshold");
        r(i, i) = Complex(norm, 0.0);
        for (std::size_t k = 0; k < nr; ++k)
            q(k, i) = metered_div(q(k, i), norm, ledger);
        for (std::size_t j = i + 1; j < nt; ++j) {
            const Complex rij = column_dot(q, i, j, 0, ledger);
            r(i, j) = rij;
            for (std::size_t k = 0; k < nr; ++k)
                q(k, j) -= metered_mul(rij, q(k, i), ledger);
        }
    }
    f.y_tilde = apply_hermitian(q, y, ledger);
    f.r = std::move(r);
    f.q = std::move(q);
    return f;
}

QRFactorization qrd_clgs(const ComplexMatrix& h, std::span<const Complex> y) {
    check_factorization_input(h, y);
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();

    QRFactorization f;
    f.method = QrdMethod::Clgs;
    CostLedger& ledger = f.ledger;

    ComplexMatrix q(nr, nt);
    ComplexMatrix r(nt, nt);
    std::vector<Complex> v(nr);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t k = 0; k < nr; ++k) v[k] = h(k, i);
        // Projection coefficients taken against the original column of H,
        // which is what distinguishes the classical sweep from the stable one.
        for (std::size_t p = 0; p < i; ++p) {
            Complex rpi(0.0, 0.0);
            for (std::size_t k = 0; k < nr; ++k)
                rpi += metered_mul(std::conj(q(k, p)), h(k, i), ledger);
            r(p, i) = rpi;
            for (std::size_t k = 0; k < nr; ++k)
                v[k] -= metered_mul(rpi, q(k, p), ledger);
        }
        const double norm = vector_norm(v, ledger);
        if (norm < kRankTol)
            throw RankDeficiencyError("clgs: column norm below rank threshold");
        r(i, i) = Complex(norm, 0.0);
        for (std::size_t k = 0; k < nr; ++k)
            q(k, i) = metered_div(v[k], norm, ledger);
    }
    f.y_tilde = apply_hermitian(q, y, ledger);
    f.r = std::move(r);
    f.q = std::move(q);
    return f;
}

HouseholderReflector house(std::span<const Complex> x, CostLedger& ledger) {
    if (x.empty())
        throw DimensionError("house: empty subcolumn");
    double sigma2 = 0.0;
    for (const Complex& z : x) {
        sigma2 += metered_mul(z.real(), z.real(), ledger);
        sigma2 += metered_mul(z.imag(), z.imag(), ledger);
    }
    const double norm = metered_sqrt(sigma2, ledger);
    if (norm < kRankTol)
        throw RankDeficiencyError("house: subcolumn norm below rank threshold");

    const Complex x1 = x[0];
    const double ax1sq = metered_mul(x1.real(), x1.real(), ledger) +
                         metered_mul(x1.imag(), x1.imag(), ledger);
    const double ax1 = metered_sqrt(ax1sq, ledger);

    // beta = -phase(x1) * ||x||, which maximizes |x1 - beta|.
    Complex beta;
    if (ax1 == 0.0) {
        beta = Complex(-norm, 0.0);
    } else {
        beta = -metered_mul(x1, metered_div(norm, ax1, ledger), ledger);
    }

    std::vector<Complex> v(x.begin(), x.end());
    v[0] -= beta;
    // ||v||^2 = 2*(||x||^2 + ||x||*|x1|), exact for this choice of beta.
    const double half = sigma2 + metered_mul(norm, ax1, ledger);
    const double vnorm = metered_sqrt(half + half, ledger);
    const double scale = metered_div(std::numbers::sqrt2, vnorm, ledger);
    for (Complex& c : v) c = metered_mul(c, scale, ledger);
    return {std::move(v), beta};
}

QRFactorization qrd_householder(const ComplexMatrix& h, std::span<const Complex> y) {
    check_factorization_input(h, y);
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();

    QRFactorization f;
    f.method = QrdMethod::Householder;
    CostLedger& ledger = f.ledger;

    ComplexMatrix a = h;
    std::vector<HouseholderReflector> reflectors;
    reflectors.reserve(nt);
    std::vector<Complex> sub(nr);
    for (std::size_t i = 0; i < nt; ++i) {
        sub.resize(nr - i);
        for (std::size_t k = i; k < nr; ++k) sub[k - i] = a(k, i);
        HouseholderReflector hr = house(sub, ledger);
        for (std::size_t j = i + 1; j < nt; ++j) {
            Complex w(0.0, 0.0);
            for (std::size_t k = i; k < nr; ++k)
                w += metered_mul(std::conj(hr.v[k - i]), a(k, j), ledger);
            for (std::size_t k = i; k < nr; ++k)
                a(k, j) -= metered_mul(w, hr.v[k - i], ledger);
        }
        reflectors.push_back(std::move(hr));
    }

    // R = diag{beta} + strict upper part of the worked matrix.
    ComplexMatrix r(nt, nt);
    for (std::size_t i = 0; i < nt; ++i) {
        r(i, i) = reflectors[i].beta;
        for (std::size_t j = i + 1; j < nt; ++j) r(i, j) = a(i, j);
    }

    // Backward accumulation of the thin Q from [I; 0]; columns left of the
    // current reflector are still untouched unit vectors at that point.
    ComplexMatrix q(nr, nt);
    for (std::size_t i = 0; i < nt; ++i) q(i, i) = Complex(1.0, 0.0);
    for (std::size_t i = nt; i-- > 0;) {
        const auto& v = reflectors[i].v;
        for (std::size_t j = i; j < nt; ++j) {
            Complex w(0.0, 0.0);
            for (std::size_t k = i; k < nr; ++k)
                w += metered_mul(std::conj(v[k - i]), q(k, j), ledger);
            for (std::size_t k = i; k < nr; ++k)
                q(k, j) -= metered_mul(w, v[k - i], ledger);
        }
    }

    f.y_tilde = apply_hermitian(q, y, ledger);
    f.r = std::move(r);
    f.q = std::move(q);
    return f;
}

GivensRotation givens_params(const Complex& a, const Complex& b, CostLedger& ledger) {
    double mag2 = metered_mul(a.real(), a.real(), ledger) +
                  metered_mul(a.imag(), a.imag(), ledger);
    mag2 += metered_mul(b.real(), b.real(), ledger) +
            metered_mul(b.imag(), b.imag(), ledger);
    const double r = metered_sqrt(mag2, ledger);
    if (r < kRankTol)
        throw DegenerateRotationError("givens_params: pair norm below threshold");
    const Complex alpha = metered_div(a, r, ledger);
    const Complex beta = metered_div(b, r, ledger);
    return {std::conj(alpha), std::conj(beta), -beta, alpha, r};
}

namespace detail {

GivensRotation annihilation_rotation(const ComplexMatrix& work, std::size_t col,
                                     std::size_t target, CostLedger& ledger) {
    const Complex a = work(col, col);
    const Complex b = work(target, col);
    // The algorithm writes the sub-column norm into each coefficient line;
    // both evaluations give the same value and both are charged.
    const double r1 = column_norm(work, col, col, target, ledger);
    if (r1 < kRankTol)
        throw RankDeficiencyError("givens: pivot sub-column norm below rank threshold");
    const Complex alpha = metered_div(a, r1, ledger);
    const double r2 = column_norm(work, col, col, target, ledger);
    const Complex beta = metered_div(b, r2, ledger);
    return {std::conj(alpha), std::conj(beta), -beta, alpha, r1};
}

void apply_rotation_rows(ComplexMatrix& work, const GivensRotation& g, std::size_t row_a,
                         std::size_t row_b, std::size_t col_begin, std::size_t col_end,
                         CostLedger& ledger) {
    for (std::size_t c = col_begin; c < col_end; ++c) {
        const Complex top = work(row_a, c);
        const Complex bot = work(row_b, c);
        work(row_a, c) = metered_mul(g.g11, top, ledger) + metered_mul(g.g12, bot, ledger);
        work(row_b, c) = metered_mul(g.g21, top, ledger) + metered_mul(g.g22, bot, ledger);
    }
}

void apply_rotation_cols(ComplexMatrix& u, const GivensRotation& g, std::size_t col_a,
                         std::size_t col_b, CostLedger& ledger) {
    for (std::size_t k = 0; k < u.rows(); ++k) {
        const Complex ua = u(k, col_a);
        const Complex ub = u(k, col_b);
        u(k, col_a) = metered_mul(std::conj(g.g11), ua, ledger) +
                      metered_mul(std::conj(g.g12), ub, ledger);
        u(k, col_b) = metered_mul(std::conj(g.g21), ua, ledger) +
                      metered_mul(std::conj(g.g22), ub, ledger);
    }
}

}  // namespace detail

namespace {

void check_triangular_rank(const ComplexMatrix& work, std::size_t nt) {
    for (std::size_t i = 0; i < nt; ++i)
        if (std::abs(work(i, i)) < kRankTol)
            throw RankDeficiencyError("givens: rank-deficient triangle");
}

}  // namespace

QRFactorization qrd_givens(const ComplexMatrix& h, std::span<const Complex> y) {
    check_factorization_input(h, y);
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();

    QRFactorization f;
    f.method = QrdMethod::Givens;
    CostLedger& ledger = f.ledger;

    ComplexMatrix work = h;
    ComplexMatrix u = ComplexMatrix::identity(nr);
    for (std::size_t col = 0; col < nt; ++col) {
        for (std::size_t target = col + 1; target < nr; ++target) {
            if (work(target, col) == Complex(0.0, 0.0)) continue;  // already zero
            const GivensRotation g = detail::annihilation_rotation(work, col, target, ledger);
            detail::apply_rotation_rows(work, g, col, target, col, nt, ledger);
            work(col, col) = Complex(g.r, 0.0);
            work(target, col) = Complex(0.0, 0.0);
            detail::apply_rotation_cols(u, g, col, target, ledger);
        }
    }
    check_triangular_rank(work, nt);

    ComplexMatrix r(nt, nt);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = i; j < nt; ++j) r(i, j) = work(i, j);
    ComplexMatrix q(nr, nt);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nt; ++j) q(i, j) = u(i, j);

    f.y_tilde = apply_hermitian(q, y, ledger);
    f.r = std::move(r);
    f.q = std::move(q);
    return f;
}

QRFactorization qrd_rcpgr(const ComplexMatrix& h, std::span<const Complex> y) {
    check_factorization_input(h, y);
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();

    QRFactorization f;
    f.method = QrdMethod::Rcpgr;
    CostLedger& ledger = f.ledger;

    // Augmented working matrix [H y]; the rotations fold Q^H y into the last
    // column and Q itself is never formed.
    ComplexMatrix work(nr, nt + 1);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nt; ++j) work(i, j) = h(i, j);
        work(i, nt) = y[i];
    }
    for (std::size_t col = 0; col < nt + 1; ++col) {
        for (std::size_t target = col + 1; target < nr; ++target) {
            if (work(target, col) == Complex(0.0, 0.0)) continue;
            const GivensRotation g = detail::annihilation_rotation(work, col, target, ledger);
            detail::apply_rotation_rows(work, g, col, target, col, nt + 1, ledger);
            work(col, col) = Complex(g.r, 0.0);
            work(target, col) = Complex(0.0, 0.0);
        }
    }
    check_triangular_rank(work, nt);

    ComplexMatrix r(nt, nt);
    f.y_tilde.resize(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = i; j < nt; ++j) r(i, j) = work(i, j);
        f.y_tilde[i] = work(i, nt);
    }
    f.r = std::move(r);
    f.q = std::nullopt;
    return f;
}

QRFactorization factorize(QrdMethod m, const ComplexMatrix& h, std::span<const Complex> y) {
    switch (m) {
        case QrdMethod::Clgs: return qrd_clgs(h, y);
        case QrdMethod::Stgs: return qrd_stgs(h, y);
        case QrdMethod::Householder: return qrd_householder(h, y);
        case QrdMethod::Givens: return qrd_givens(h, y);
        case QrdMethod::Pgr: return qrd_pgr(h, y);
        case QrdMethod::Rcpgr: return qrd_rcpgr(h, y);
    }
    throw DimensionError("factorize: unknown method");
}

QRFactorization canonicalize(QRFactorization f) {
    const std::size_t nt = f.r.cols();
    CostLedger& ledger = f.ledger;
    for (std::size_t i = 0; i < nt; ++i) {
        const Complex d = f.r(i, i);
        if (d == Complex(0.0, 0.0)) continue;
        if (d.imag() == 0.0 && d.real() >= 0.0) continue;  // already canonical
        const double mag2 = metered_mul(d.real(), d.real(), ledger) +
                            metered_mul(d.imag(), d.imag(), ledger);
        const double mag = metered_sqrt(mag2, ledger);
        const Complex phase = metered_div(d, mag, ledger);
        const Complex cphase = std::conj(phase);
        f.r(i, i) = Complex(mag, 0.0);
        for (std::size_t j = i + 1; j < nt; ++j)
            f.r(i, j) = metered_mul(f.r(i, j), cphase, ledger);
        f.y_tilde[i] = metered_mul(f.y_tilde[i], cphase, ledger);
        if (f.q) {
            ComplexMatrix& q = *f.q;
            for (std::size_t k = 0; k < q.rows(); ++k)
                q(k, i) = metered_mul(q(k, i), phase, ledger);
        }
    }
    return f;
}

}  // namespace qrmimo
