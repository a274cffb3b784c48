#pragma once

#include <stdexcept>

namespace qrmimo {

// Input files or text formats that fail to parse.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape mismatch between operands, or out-of-range indices.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A column norm (or reflector norm, or detection-layer pivot) fell below
// the 1e-12 threshold. Inputs are treated as rank deficient, never
// regularized.
struct RankDeficiencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metered arithmetic produced a non-finite value.
struct NumericOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// givens_params was asked to rotate a (near-)zero pair.
struct DegenerateRotationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sphere search finished without any candidate inside the radius.
struct EmptySphereError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive search would exceed the configured candidate cap.
struct SearchSpaceCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qrmimo
