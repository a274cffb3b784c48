#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qrmimo/matrix.hpp"

namespace qrmimo {

struct ConstellationPoint {
    Complex symbol;
    std::array<int, 2> bits;
};

// Unit-energy QPSK, Gray mapped: bit pair (b0, b1) -> ((1-2*b0) + (1-2*b1)i)/sqrt(2).
// Index order (00, 01, 10, 11) is the lexicographic tie-break order used by
// the tree searches.
const std::array<ConstellationPoint, 4>& qpsk();

// Nearest constellation point; the signs of re and im decide, ties go
// toward positive components.
const ConstellationPoint& quantize(const Complex& z);

struct DetectionResult {
    std::vector<Complex> symbols;   // one constellation symbol per layer
    double metric = 0.0;            // squared residual of the search's own metric
    std::size_t visited_nodes = 0;  // full-length metric evaluations (SD/ML) or
                                    // per-level expansions (QRD-M); 0 for the rest
};

// Least-squares solution quantized entrywise; solved through the stable
// Gram-Schmidt factorization and back-substitution. metric = ||y - H*x||^2.
DetectionResult detect_zf(const ComplexMatrix& h, std::span<const Complex> y);

// Linear MMSE via the augmented system [H; sqrt(sigma2) I], quantized
// entrywise. metric = ||y - H*x||^2.
DetectionResult detect_mmse(const ComplexMatrix& h, std::span<const Complex> y, double sigma2);

// Successive interference cancellation on a canonicalized (R, y_tilde),
// layers n_t..1. metric = ||y_tilde - R*x||^2.
DetectionResult detect_sic(const ComplexMatrix& r, std::span<const Complex> y_tilde);

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// Depth-first sphere decoder with shrink-on-leaf; with d infinite the result
// equals exhaustive ML restricted to the triangularized metric. Throws
// EmptySphereError when no candidate lies within d.
DetectionResult detect_sd(const ComplexMatrix& r, std::span<const Complex> y_tilde,
                          double d = kInfiniteRadius);

// Breadth-first search keeping the m best partial candidates per level,
// ties broken by lexicographic symbol index. Fixed node count for given
// (m, n_t).
DetectionResult detect_qrdm(const ComplexMatrix& r, std::span<const Complex> y_tilde, int m);

// Exhaustive minimization of ||y - H*x||^2, ties broken lexicographically.
// Refuses when |constellation|^n_t exceeds cap.
DetectionResult detect_ml(const ComplexMatrix& h, std::span<const Complex> y,
                          std::size_t cap = std::size_t(1) << 20);

}  // namespace qrmimo
