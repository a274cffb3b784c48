#include "qrmimo/channel.hpp"

#include <cmath>
#include <exception>

#include "qrmimo/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrmimo {

ComplexMatrix gen_channel(std::size_t n_r, std::size_t n_t, Rng& rng) {
    ComplexMatrix h(n_r, n_t);
    for (std::size_t i = 0; i < n_r; ++i)
        for (std::size_t j = 0; j < n_t; ++j)
            h(i, j) = rng.next_complex_gaussian(0.5);
    return h;
}

std::vector<Complex> gen_noise(std::size_t n_r, double sigma2, Rng& rng) {
    if (sigma2 < 0.0)
        throw DimensionError("gen_noise: sigma2 must be nonnegative");
    std::vector<Complex> n(n_r);
    for (std::size_t i = 0; i < n_r; ++i)
        n[i] = rng.next_complex_gaussian(sigma2 / 2.0);
    return n;
}

std::vector<Complex> modulate_qpsk(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0)
        throw DimensionError("modulate_qpsk: bit count must be even");
    std::vector<Complex> symbols;
    symbols.reserve(bits.size() / 2);
    for (std::size_t k = 0; k + 1 < bits.size(); k += 2) {
        const int b0 = bits[k];
        const int b1 = bits[k + 1];
        if ((b0 != 0 && b0 != 1) || (b1 != 0 && b1 != 1))
            throw DimensionError("modulate_qpsk: bits must be 0 or 1");
        symbols.push_back(qpsk()[(b0 << 1) | b1].symbol);
    }
    return symbols;
}

std::vector<int> demodulate_qpsk(std::span<const Complex> symbols) {
    std::vector<int> bits;
    bits.reserve(symbols.size() * 2);
    for (const Complex& s : symbols) {
        bits.push_back(s.real() < 0.0 ? 1 : 0);
        bits.push_back(s.imag() < 0.0 ? 1 : 0);
    }
    return bits;
}

double snr_to_sigma2(double snr_db, std::size_t n_t) {
    if (n_t < 1)
        throw DimensionError("snr_to_sigma2: n_t must be positive");
    const double db = snr_db < -100.0 ? -100.0 : snr_db;
    return static_cast<double>(n_t) / std::pow(10.0, db / 10.0);
}

DetectorSpec DetectorSpec::parse(const std::string& token) {
    DetectorSpec spec;
    spec.label = token;
    if (token == "zf") {
        spec.kind = Kind::Zf;
    } else if (token == "mmse") {
        spec.kind = Kind::Mmse;
    } else if (token == "sic") {
        spec.kind = Kind::Sic;
    } else if (token == "ml") {
        spec.kind = Kind::Ml;
    } else if (token == "sd") {
        spec.kind = Kind::Sd;
    } else if (token.rfind("sd:", 0) == 0) {
        spec.kind = Kind::Sd;
        try {
            spec.sd_radius = std::stod(token.substr(3));
        } catch (const std::exception&) {
            throw ParseError("bad sphere radius in detector token: " + token);
        }
        if (!(spec.sd_radius > 0.0))
            throw ParseError("sphere radius must be positive: " + token);
    } else if (token.rfind("qrdm", 0) == 0) {
        spec.kind = Kind::Qrdm;
        std::string arg = token.substr(4);
        if (!arg.empty() && arg[0] == ':') arg = arg.substr(1);
        try {
            spec.m = std::stoi(arg);
        } catch (const std::exception&) {
            throw ParseError("bad beam width in detector token: " + token);
        }
        if (spec.m < 1)
            throw ParseError("beam width must be at least 1: " + token);
    } else {
        throw ParseError("unknown detector: " + token);
    }
    return spec;
}

namespace {

struct TrialCounters {
    // bit_errors[detector][snr]
    std::vector<std::vector<std::uint64_t>> bit_errors;

    TrialCounters(std::size_t detectors, std::size_t snrs)
        : bit_errors(detectors, std::vector<std::uint64_t>(snrs, 0)) {}

    void merge(const TrialCounters& o) {
        for (std::size_t d = 0; d < bit_errors.size(); ++d)
            for (std::size_t s = 0; s < bit_errors[d].size(); ++s)
                bit_errors[d][s] += o.bit_errors[d][s];
    }
};

void run_trial(const SimConfig& cfg, const std::vector<DetectorSpec>& active,
               std::size_t trial, TrialCounters& counters) {
    Rng rng = Rng::substream(cfg.seed, trial);

    std::vector<int> bits(2 * cfg.n_t);
    for (int& b : bits) b = rng.next_bit();
    const std::vector<Complex> x = modulate_qpsk(bits);
    const ComplexMatrix h = gen_channel(cfg.n_r, cfg.n_t, rng);

    std::vector<Complex> hx(cfg.n_r, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < cfg.n_r; ++i)
        for (std::size_t j = 0; j < cfg.n_t; ++j) hx[i] += h(i, j) * x[j];

    bool needs_qrd = false;
    for (const auto& d : active)
        needs_qrd |= d.kind == DetectorSpec::Kind::Sic || d.kind == DetectorSpec::Kind::Sd ||
                     d.kind == DetectorSpec::Kind::Qrdm;

    std::vector<Complex> y(cfg.n_r);
    for (std::size_t si = 0; si < cfg.snr_db_points.size(); ++si) {
        const double sigma2 = snr_to_sigma2(cfg.snr_db_points[si], cfg.n_t);
        const std::vector<Complex> noise = gen_noise(cfg.n_r, sigma2, rng);
        for (std::size_t i = 0; i < cfg.n_r; ++i) y[i] = hx[i] + noise[i];

        QRFactorization f;
        if (needs_qrd) f = canonicalize(factorize(cfg.engine, h, y));

        for (std::size_t d = 0; d < active.size(); ++d) {
            DetectionResult res;
            switch (active[d].kind) {
                case DetectorSpec::Kind::Zf: res = detect_zf(h, y); break;
                case DetectorSpec::Kind::Mmse: res = detect_mmse(h, y, sigma2); break;
                case DetectorSpec::Kind::Sic: res = detect_sic(f.r, f.y_tilde); break;
                case DetectorSpec::Kind::Sd:
                    res = detect_sd(f.r, f.y_tilde, active[d].sd_radius);
                    break;
                case DetectorSpec::Kind::Qrdm:
                    res = detect_qrdm(f.r, f.y_tilde, active[d].m);
                    break;
                case DetectorSpec::Kind::Ml: res = detect_ml(h, y, cfg.ml_cap); break;
            }
            const std::vector<int> decided = demodulate_qpsk(res.symbols);
            std::uint64_t errs = 0;
            for (std::size_t k = 0; k < bits.size(); ++k) errs += decided[k] != bits[k];
            counters.bit_errors[d][si] += errs;
        }
    }
}

}  // namespace

std::vector<BerCurve> run_ber(const SimConfig& cfg) {
    if (cfg.n_r < cfg.n_t || cfg.n_t < 1)
        throw DimensionError("run_ber: requires n_r >= n_t >= 1");
    if (cfg.trials < 1)
        throw DimensionError("run_ber: need at least one trial");
    if (cfg.snr_db_points.empty())
        throw DimensionError("run_ber: SNR sweep is empty");
    if (cfg.detectors.empty())
        throw DimensionError("run_ber: no detectors configured");

    std::vector<BerCurve> curves(cfg.detectors.size());
    std::vector<DetectorSpec> active;
    std::vector<std::size_t> active_slot;
    for (std::size_t d = 0; d < cfg.detectors.size(); ++d) {
        curves[d].detector = cfg.detectors[d].label;
        if (cfg.detectors[d].kind == DetectorSpec::Kind::Ml &&
            (cfg.n_t >= 30 || (std::size_t(1) << (2 * cfg.n_t)) > cfg.ml_cap)) {
            curves[d].skipped = true;
            curves[d].skip_reason = "search space exceeds ml_cap";
            continue;
        }
        active.push_back(cfg.detectors[d]);
        active_slot.push_back(d);
    }

    TrialCounters totals(active.size(), cfg.snr_db_points.size());
    std::exception_ptr err;

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    const int threads = cfg.threads > 0 ? cfg.threads : max_threads;
#pragma omp parallel num_threads(threads)
    {
        TrialCounters local(active.size(), cfg.snr_db_points.size());
#pragma omp for schedule(static) nowait
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            try {
                run_trial(cfg, active, t, local);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
#pragma omp critical
        totals.merge(local);
    }
#else
    (void)cfg.threads;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        try {
            run_trial(cfg, active, t, totals);
        } catch (...) {
            if (!err) err = std::current_exception();
            break;
        }
    }
#endif
    if (err) std::rethrow_exception(err);

    const std::uint64_t bits_per_point =
        static_cast<std::uint64_t>(cfg.trials) * cfg.n_t * 2;
    for (std::size_t a = 0; a < active.size(); ++a) {
        BerCurve& curve = curves[active_slot[a]];
        curve.points.reserve(cfg.snr_db_points.size());
        for (std::size_t si = 0; si < cfg.snr_db_points.size(); ++si) {
            const std::uint64_t errs = totals.bit_errors[a][si];
            curve.points.push_back({cfg.snr_db_points[si], errs, bits_per_point,
                                    static_cast<double>(errs) /
                                        static_cast<double>(bits_per_point)});
        }
    }
    return curves;
}

}  // namespace qrmimo
