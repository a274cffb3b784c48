#include "qrmimo/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qrmimo/qrd.hpp"

namespace qrmimo {

const std::array<ConstellationPoint, 4>& qpsk() {
    static const double a = 1.0 / std::numbers::sqrt2;
    static const std::array<ConstellationPoint, 4> set{{
        {Complex(a, a), {0, 0}},
        {Complex(a, -a), {0, 1}},
        {Complex(-a, a), {1, 0}},
        {Complex(-a, -a), {1, 1}},
    }};
    return set;
}

const ConstellationPoint& quantize(const Complex& z) {
    const int b0 = z.real() < 0.0 ? 1 : 0;
    const int b1 = z.imag() < 0.0 ? 1 : 0;
    return qpsk()[(b0 << 1) | b1];
}

namespace {

void check_triangular_input(const ComplexMatrix& r, std::span<const Complex> y_tilde) {
    if (r.rows() != r.cols())
        throw DimensionError("detector: R must be square");
    if (y_tilde.size() != r.rows())
        throw DimensionError("detector: y_tilde length does not match R");
}

double residual_rx(const ComplexMatrix& r, std::span<const Complex> y_tilde,
                   std::span<const Complex> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        Complex t = y_tilde[i];
        for (std::size_t j = i; j < r.cols(); ++j) t -= r(i, j) * x[j];
        acc += std::norm(t);
    }
    return acc;
}

double residual_hx(const ComplexMatrix& h, std::span<const Complex> y,
                   std::span<const Complex> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        Complex t = y[i];
        for (std::size_t j = 0; j < h.cols(); ++j) t -= h(i, j) * x[j];
        acc += std::norm(t);
    }
    return acc;
}

// Back-substitution for the unquantized solution of R z = b.
std::vector<Complex> solve_upper(const ComplexMatrix& r, std::span<const Complex> b) {
    const std::size_t n = r.rows();
    std::vector<Complex> z(n);
    for (std::size_t ii = n; ii-- > 0;) {
        if (std::abs(r(ii, ii)) < kRankTol)
            throw RankDeficiencyError("solve_upper: singular pivot");
        Complex acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= r(ii, j) * z[j];
        z[ii] = acc / r(ii, ii);
    }
    return z;
}

DetectionResult quantize_linear_solution(const ComplexMatrix& h, std::span<const Complex> y,
                                         const QRFactorization& f) {
    const std::vector<Complex> z = solve_upper(f.r, f.y_tilde);
    DetectionResult res;
    res.symbols.reserve(z.size());
    for (const Complex& c : z) res.symbols.push_back(quantize(c).symbol);
    res.metric = residual_hx(h, y, res.symbols);
    return res;
}

}  // namespace

DetectionResult detect_zf(const ComplexMatrix& h, std::span<const Complex> y) {
    return quantize_linear_solution(h, y, canonicalize(qrd_stgs(h, y)));
}

DetectionResult detect_mmse(const ComplexMatrix& h, std::span<const Complex> y, double sigma2) {
    if (sigma2 < 0.0)
        throw DimensionError("detect_mmse: sigma2 must be nonnegative");
    if (y.size() != h.rows())
        throw DimensionError("detect_mmse: vector length does not match rows");
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();
    const double sigma = std::sqrt(sigma2);
    ComplexMatrix aug(nr + nt, nt);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nt; ++j) aug(i, j) = h(i, j);
    for (std::size_t j = 0; j < nt; ++j) aug(nr + j, j) = Complex(sigma, 0.0);
    std::vector<Complex> yaug(nr + nt, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < nr; ++i) yaug[i] = y[i];
    return quantize_linear_solution(h, y, canonicalize(qrd_stgs(aug, yaug)));
}

DetectionResult detect_sic(const ComplexMatrix& r, std::span<const Complex> y_tilde) {
    check_triangular_input(r, y_tilde);
    const std::size_t n = r.rows();
    DetectionResult res;
    res.symbols.resize(n);
    for (std::size_t ii = n; ii-- > 0;) {
        if (std::abs(r(ii, ii)) < kRankTol)
            throw RankDeficiencyError("sic: singular layer");
        Complex acc = y_tilde[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= r(ii, j) * res.symbols[j];
        res.symbols[ii] = quantize(acc / r(ii, ii)).symbol;
    }
    res.metric = residual_rx(r, y_tilde, res.symbols);
    return res;
}

namespace {

struct SphereSearch {
    const ComplexMatrix& r;
    std::span<const Complex> y_tilde;
    double radius2;
    std::vector<Complex> chosen;
    std::vector<Complex> best;
    double best_metric = kInfiniteRadius;
    bool found = false;
    std::size_t leaves = 0;

    void descend(std::size_t level, double partial) {
        Complex b = y_tilde[level];
        for (std::size_t j = level + 1; j < r.cols(); ++j) b -= r(level, j) * chosen[j];
        for (const ConstellationPoint& p : qpsk()) {
            const double m = partial + std::norm(b - r(level, level) * p.symbol);
            if (level == 0) ++leaves;
            if (m > radius2) continue;
            chosen[level] = p.symbol;
            if (level == 0) {
                if (!found || m < best_metric) {
                    found = true;
                    best_metric = m;
                    best = chosen;
                    radius2 = m;  // shrink to the newest full-length candidate
                }
            } else {
                descend(level - 1, m);
            }
        }
    }
};

}  // namespace

DetectionResult detect_sd(const ComplexMatrix& r, std::span<const Complex> y_tilde, double d) {
    check_triangular_input(r, y_tilde);
    if (!(d > 0.0))
        throw DimensionError("detect_sd: radius must be positive");
    const std::size_t n = r.rows();
    SphereSearch search{r, y_tilde, std::isinf(d) ? kInfiniteRadius : d * d,
                        std::vector<Complex>(n), {}, kInfiniteRadius, false, 0};
    search.descend(n - 1, 0.0);
    if (!search.found)
        throw EmptySphereError("detect_sd: no candidate inside the radius");
    DetectionResult res;
    res.symbols = std::move(search.best);
    res.metric = search.best_metric;
    res.visited_nodes = search.leaves;
    return res;
}

DetectionResult detect_qrdm(const ComplexMatrix& r, std::span<const Complex> y_tilde, int m) {
    check_triangular_input(r, y_tilde);
    if (m < 1)
        throw DimensionError("detect_qrdm: M must be at least 1");
    const std::size_t n = r.rows();

    struct Node {
        double metric = 0.0;
        std::vector<std::uint8_t> idx;
    };
    std::vector<Node> beam{{0.0, std::vector<std::uint8_t>(n, 0)}};
    std::vector<Node> children;
    std::size_t visited = 0;

    for (std::size_t ii = n; ii-- > 0;) {
        children.clear();
        children.reserve(beam.size() * 4);
        for (const Node& node : beam) {
            Complex b = y_tilde[ii];
            for (std::size_t j = ii + 1; j < n; ++j)
                b -= r(ii, j) * qpsk()[node.idx[j]].symbol;
            for (std::uint8_t s = 0; s < 4; ++s) {
                const double metric =
                    node.metric + std::norm(b - r(ii, ii) * qpsk()[s].symbol);
                Node child = node;
                child.metric = metric;
                child.idx[ii] = s;
                children.push_back(std::move(child));
            }
        }
        visited += beam.size() * 4;
        // Stable sort keeps generation order among ties, which is the
        // lexicographic symbol-index tie-break.
        std::stable_sort(children.begin(), children.end(),
                         [](const Node& a, const Node& b) { return a.metric < b.metric; });
        if (children.size() > static_cast<std::size_t>(m))
            children.resize(static_cast<std::size_t>(m));
        beam.swap(children);
    }

    const Node& bestNode = beam.front();
    DetectionResult res;
    res.symbols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) res.symbols.push_back(qpsk()[bestNode.idx[i]].symbol);
    res.metric = bestNode.metric;
    res.visited_nodes = visited;
    return res;
}

DetectionResult detect_ml(const ComplexMatrix& h, std::span<const Complex> y, std::size_t cap) {
    if (y.size() != h.rows())
        throw DimensionError("detect_ml: vector length does not match rows");
    const std::size_t nt = h.cols();
    if (nt >= 30)
        throw SearchSpaceCapError("detect_ml: constellation power overflows the index");
    const std::size_t total = std::size_t(1) << (2 * nt);
    if (total > cap)
        throw SearchSpaceCapError("detect_ml: search space exceeds the candidate cap");

    std::vector<Complex> x(nt);
    DetectionResult res;
    res.metric = kInfiniteRadius;
    bool found = false;
    for (std::size_t k = 0; k < total; ++k) {
        // Digit i (level i) sits at bit position 2*i, so candidates appear in
        // the same lexicographic order the sphere search walks.
        for (std::size_t i = 0; i < nt; ++i)
            x[i] = qpsk()[(k >> (2 * i)) & 3].symbol;
        const double m = residual_hx(h, y, x);
        if (!found || m < res.metric) {
            found = true;
            res.metric = m;
            res.symbols = x;
        }
    }
    res.visited_nodes = total;
    return res;
}

}  // namespace qrmimo
