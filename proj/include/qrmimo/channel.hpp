#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qrmimo/detect.hpp"
#include "qrmimo/qrd.hpp"

namespace qrmimo {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic generator: mt19937_64 seeded through SplitMix64, with
// substreams derived as seed + index * golden-gamma before mixing. Uniform
// deviates come from the raw 64-bit output ((x >> 11) + 1) * 2^-53 in
// (0, 1]; Gaussians via the Box-Muller transform. Nothing here depends on
// implementation-defined library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
        return Rng(master_seed + index * 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next_u64() { return gen_(); }

    int next_bit() { return static_cast<int>(next_u64() >> 63); }

    double next_unit() {  // (0, 1]
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    std::pair<double, double> next_gaussian_pair() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    Complex next_complex_gaussian(double component_variance) {
        const auto [z0, z1] = next_gaussian_pair();
        const double s = std::sqrt(component_variance);
        return {s * z0, s * z1};
    }

private:
    std::mt19937_64 gen_;
};

inline constexpr const char* kRngDescription =
    "mt19937_64 via splitmix64(seed + trial * 0x9E3779B97F4A7C15); "
    "uniforms ((x>>11)+1)*2^-53; gaussians by Box-Muller";

// Rayleigh channel: i.i.d. entries drawn row-major, real and imaginary
// parts independent N(0, 0.5) so that E|h|^2 = 1.
ComplexMatrix gen_channel(std::size_t n_r, std::size_t n_t, Rng& rng);

// Circular complex Gaussian noise, per-component variance sigma2/2.
std::vector<Complex> gen_noise(std::size_t n_r, double sigma2, Rng& rng);

std::vector<Complex> modulate_qpsk(const std::vector<int>& bits);
std::vector<int> demodulate_qpsk(std::span<const Complex> symbols);

// Per-receive-antenna SNR with unit-energy symbols and E|h|^2 = 1: the
// received signal power is n_t, so sigma2 = n_t / 10^(snr_db/10). Inputs
// below -100 dB are clamped to keep the exponent in range.
double snr_to_sigma2(double snr_db, std::size_t n_t);

struct DetectorSpec {
    enum class Kind { Zf, Mmse, Sic, Sd, Qrdm, Ml };
    Kind kind = Kind::Zf;
    int m = 1;                           // QRD-M beam width
    double sd_radius = kInfiniteRadius;  // sphere radius d
    std::string label;

    static DetectorSpec parse(const std::string& token);  // throws ParseError
};

struct SimConfig {
    std::size_t n_t = 4;
    std::size_t n_r = 4;
    std::vector<double> snr_db_points;
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    QrdMethod engine = QrdMethod::Rcpgr;  // backend for SIC/SD/QRD-M
    std::vector<DetectorSpec> detectors;
    std::size_t ml_cap = std::size_t(1) << 20;
    int threads = 0;  // 0 = all available; 1 = serial reference path
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_simulated = 0;
    double ber = 0.0;
};

struct BerCurve {
    std::string detector;
    std::vector<BerPoint> points;
    bool skipped = false;
    std::string skip_reason;
};

// Monte-Carlo sweep. Every trial draws (bits, H) then per SNR point a fresh
// noise vector, and all detectors see the same realization. Trial t uses
// Rng::substream(seed, t), so results are bit-identical for any worker
// count and any detector ordering.
std::vector<BerCurve> run_ber(const SimConfig& cfg);

}  // namespace qrmimo
