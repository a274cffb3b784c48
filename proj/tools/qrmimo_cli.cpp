// Command-line front end: factorize, complexity, parallelism, ber.
//
// Exit codes: 0 success, 2 usage error, 3 input parse error, 4 dimension
// error, 5 numeric failure (rank deficiency, degenerate rotation, overflow,
// empty sphere), 1 anything else.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qrmimo/channel.hpp"
#include "qrmimo/complexity.hpp"
#include "qrmimo/io.hpp"
#include "qrmimo/qrd.hpp"
#include "qrmimo/schedule.hpp"

namespace {

using namespace qrmimo;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open '" + path + "' for writing");
    return os;
}

// Manifest lines embedded at the top of every CSV; a run is reproducible
// from them alone. Deliberately free of timestamps.
void write_manifest(std::ostream& os, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params) {
    os << "# tool: " << kToolVersion << "\n";
    os << "# command: " << command << "\n";
    for (const auto& [k, v] : params) os << "# " << k << ": " << v << "\n";
}

std::vector<Shape> parse_sizes(const std::string& spec) {
    auto parse_one = [](const std::string& tok) -> Shape {
        const auto x = tok.find('x');
        if (x == std::string::npos)
            throw UsageError("size '" + tok + "' is not of the form RxT");
        int nr = 0, nt = 0;
        try {
            nr = std::stoi(tok.substr(0, x));
            nt = std::stoi(tok.substr(x + 1));
        } catch (const std::exception&) {
            throw UsageError("size '" + tok + "' is not of the form RxT");
        }
        if (nr < nt || nt < 1)
            throw UsageError("size '" + tok + "' must satisfy n_r >= n_t >= 1");
        return {nr, nt};
    };

    std::vector<Shape> sizes;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            sizes.push_back(parse_one(tok));
            continue;
        }
        const Shape lo = parse_one(tok.substr(0, dots));
        const Shape hi = parse_one(tok.substr(dots + 2));
        if (lo.n_r != lo.n_t || hi.n_r != hi.n_t || hi.n_t < lo.n_t)
            throw UsageError("size range '" + tok + "' must run between square shapes");
        for (int s = lo.n_t; s <= hi.n_t; ++s) sizes.push_back({s, s});
    }
    if (sizes.empty()) throw UsageError("no sizes given");
    return sizes;
}

std::vector<QrdMethod> parse_methods(const std::string& spec) {
    std::vector<QrdMethod> methods;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const auto m = parse_method(tok);
        if (!m) throw UsageError("unknown method '" + tok + "'");
        methods.push_back(*m);
    }
    if (methods.empty()) throw UsageError("no methods given");
    return methods;
}

std::vector<double> parse_snr_list(const std::string& spec) {
    std::vector<double> points;
    if (spec.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &step, &stop) != 3 || step <= 0)
            throw ParseError("snr_db range must be start:step:stop with positive step");
        for (double v = start; v <= stop + 1e-9; v += step) points.push_back(v);
    } else {
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                points.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ParseError("bad snr_db value '" + tok + "'");
            }
        }
    }
    if (points.empty()) throw ParseError("snr_db list is empty");
    return points;
}

// ---------------------------------------------------------------- factorize

struct FactorizeArgs {
    std::string matrix_path;
    std::string y_path;
    std::string method = "stgs";
    std::string out_prefix = "qrd_out";
    bool skip_q = false;
};

int run_factorize(const FactorizeArgs& args, bool quiet) {
    const auto method = parse_method(args.method);
    if (!method) throw UsageError("unknown method '" + args.method + "'");
    if (*method == QrdMethod::Rcpgr && args.y_path.empty())
        throw UsageError("method rcpgr requires --y (the augmented column)");

    const ComplexMatrix h = read_matrix_file(args.matrix_path);
    std::vector<Complex> y(h.rows(), Complex(0.0, 0.0));
    if (!args.y_path.empty()) {
        y = column_vector(read_matrix_file(args.y_path));
        if (y.size() != h.rows())
            throw DimensionError("y length does not match the matrix row count");
    }

    const QRFactorization f = canonicalize(factorize(*method, h, y));

    write_matrix_file(args.out_prefix + ".R.txt", f.r);
    write_matrix_file(args.out_prefix + ".ytilde.txt", to_column_matrix(f.y_tilde));
    if (f.q && !args.skip_q) write_matrix_file(args.out_prefix + ".Q.txt", *f.q);

    {
        auto os = open_out(args.out_prefix + ".ledger.csv");
        write_manifest(os, "factorize",
                       {{"matrix", args.matrix_path},
                        {"y", args.y_path.empty() ? "(zero vector)" : args.y_path},
                        {"method", args.method},
                        {"out", args.out_prefix}});
        os << "real_mul,real_div,real_sqrt,mul_count\n";
        os << f.ledger.real_mul << ',' << f.ledger.real_div << ',' << f.ledger.real_sqrt
           << ',' << f.ledger.mul_count() << '\n';
    }
    {
        auto os = open_out(args.out_prefix + ".manifest.txt");
        write_manifest(os, "factorize",
                       {{"matrix", args.matrix_path},
                        {"y", args.y_path.empty() ? "(zero vector)" : args.y_path},
                        {"method", args.method},
                        {"out", args.out_prefix},
                        {"outputs", args.out_prefix + ".R.txt " + args.out_prefix +
                                        ".ytilde.txt" +
                                        (f.q && !args.skip_q
                                             ? " " + args.out_prefix + ".Q.txt"
                                             : "") +
                                        " " + args.out_prefix + ".ledger.csv"}});
    }
    if (!quiet)
        std::cerr << "factorize: " << args.method << " on " << h.rows() << "x" << h.cols()
                  << ", " << f.ledger.mul_count() << " MUL\n";
    return 0;
}

// --------------------------------------------------------------- complexity

struct ComplexityArgs {
    std::string sizes = "2x2..8x8";
    std::string methods = "stgs,hh,gr,pgr,rcpgr";
    bool exclude_ytilde = false;
    std::uint64_t seed = 1;
    std::string out = "complexity.csv";
};

int run_complexity(const ComplexityArgs& args, bool quiet) {
    const std::vector<Shape> sizes = parse_sizes(args.sizes);
    const std::vector<QrdMethod> methods = parse_methods(args.methods);
    const bool include_ytilde = !args.exclude_ytilde;
    const auto rows = complexity_table(sizes, methods, include_ytilde, args.seed);

    auto os = open_out(args.out);
    write_manifest(os, "complexity",
                   {{"sizes", args.sizes},
                    {"methods", args.methods},
                    {"include-ytilde", include_ytilde ? "1" : "0"},
                    {"seed", std::to_string(args.seed)}});
    os << "n_r,n_t,method,formula_mul,measured_mul,include_ytilde,relative_gap\n";
    char gap[32];
    for (const auto& r : rows) {
        std::snprintf(gap, sizeof(gap), "%.6f", r.relative_gap);
        os << r.n_r << ',' << r.n_t << ',' << method_name(r.method) << ',' << r.formula_mul
           << ',' << r.measured_mul << ',' << (r.include_ytilde ? 1 : 0) << ',' << gap
           << '\n';
    }
    if (!quiet) std::cerr << "complexity: " << rows.size() << " rows -> " << args.out << "\n";
    return 0;
}

// -------------------------------------------------------------- parallelism

struct ParallelismArgs {
    std::string sizes = "2x2..8x8";
    std::size_t pipes = 0;
    std::size_t cost = 1;
    std::string out = "parallelism.csv";
    std::string trace_prefix;
};

int run_parallelism(const ParallelismArgs& args, bool quiet) {
    const std::vector<Shape> sizes = parse_sizes(args.sizes);
    auto os = open_out(args.out);
    write_manifest(os, "parallelism",
                   {{"sizes", args.sizes},
                    {"pipes", std::to_string(args.pipes)},
                    {"cost", std::to_string(args.cost)}});
    os << "n_rows,n_cols,tasks,rounds,gain,stgs_tasks,stgs_rounds,stgs_gain";
    if (args.pipes > 0) os << ",pipes,makespan";
    os << '\n';

    char buf[32];
    for (const Shape& s : sizes) {
        const RotationSchedule sched = build_schedule(static_cast<std::size_t>(s.n_r),
                                                      static_cast<std::size_t>(s.n_t));
        const DagSummary gs = stgs_parallelism(static_cast<std::size_t>(s.n_t));
        os << s.n_r << ',' << s.n_t << ',' << sequential_steps(sched) << ','
           << parallel_steps(sched) << ',';
        std::snprintf(buf, sizeof(buf), "%.6f", parallelism_gain(sched));
        os << buf << ',' << gs.tasks << ',' << gs.rounds << ',';
        std::snprintf(buf, sizeof(buf), "%.6f", gs.gain);
        os << buf;
        if (args.pipes > 0) {
            const PipeTrace tr = simulate_pipes(sched, args.pipes, args.cost);
            os << ',' << args.pipes << ',' << tr.makespan;
            if (!args.trace_prefix.empty()) {
                auto ts = open_out(args.trace_prefix + "_" + std::to_string(s.n_r) + "x" +
                                   std::to_string(s.n_t) + ".csv");
                write_manifest(ts, "parallelism-trace",
                               {{"size", std::to_string(s.n_r) + "x" + std::to_string(s.n_t)},
                                {"pipes", std::to_string(args.pipes)},
                                {"cost", std::to_string(args.cost)}});
                write_pipe_trace_csv(ts, tr);
            }
        }
        os << '\n';
    }
    if (!quiet) std::cerr << "parallelism: " << sizes.size() << " sizes -> " << args.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------- ber

struct BerArgs {
    std::string config_path;
    std::string out = "ber.csv";
    std::int64_t seed_override = -1;
    int threads_override = -1;
};

SimConfig load_sim_config(const std::string& path) {
    const auto kv = parse_key_value_file(path);
    SimConfig cfg;
    auto get = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    try {
        if (const auto* v = get("n_t")) cfg.n_t = std::stoul(*v);
        if (const auto* v = get("n_r")) cfg.n_r = std::stoul(*v);
        if (const auto* v = get("trials")) cfg.trials = std::stoull(*v);
        if (const auto* v = get("seed")) cfg.seed = std::stoull(*v);
        if (const auto* v = get("ml_cap")) cfg.ml_cap = std::stoull(*v);
        if (const auto* v = get("threads")) cfg.threads = std::stoi(*v);
    } catch (const std::exception&) {
        throw ParseError(path + ": malformed numeric value");
    }
    if (const auto* v = get("snr_db")) cfg.snr_db_points = parse_snr_list(*v);
    if (const auto* v = get("engine")) {
        const auto m = parse_method(*v);
        if (!m) throw ParseError(path + ": unknown engine '" + *v + "'");
        cfg.engine = *m;
    }
    if (const auto* v = get("detectors")) {
        std::stringstream ss(*v);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto b = tok.find_first_not_of(" \t");
            const auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            cfg.detectors.push_back(DetectorSpec::parse(tok.substr(b, e - b + 1)));
        }
    }
    for (const char* key : {"n_t", "n_r", "trials", "snr_db", "detectors"})
        if (!get(key)) throw ParseError(path + ": missing required key '" + std::string(key) + "'");
    return cfg;
}

int run_ber_cmd(const BerArgs& args, bool quiet) {
    SimConfig cfg = load_sim_config(args.config_path);
    if (args.seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed_override);
    if (args.threads_override >= 0) cfg.threads = args.threads_override;

    const auto curves = run_ber(cfg);

    std::string detector_list;
    for (const auto& d : cfg.detectors) {
        if (!detector_list.empty()) detector_list += ",";
        detector_list += d.label;
    }
    std::string snr_list;
    for (const double v : cfg.snr_db_points) {
        if (!snr_list.empty()) snr_list += ",";
        char b[32];
        std::snprintf(b, sizeof(b), "%g", v);
        snr_list += b;
    }

    auto os = open_out(args.out);
    write_manifest(
        os, "ber",
        {{"config", args.config_path},
         {"n_t", std::to_string(cfg.n_t)},
         {"n_r", std::to_string(cfg.n_r)},
         {"trials", std::to_string(cfg.trials)},
         {"seed", std::to_string(cfg.seed)},
         {"engine", method_name(cfg.engine)},
         {"detectors", detector_list},
         {"snr_db", snr_list},
         {"ml_cap", std::to_string(cfg.ml_cap)},
         {"modulation", "qpsk gray, bit pair (0,0) -> (+1+1i)/sqrt(2)"},
         {"snr-convention", "sigma2 = n_t / 10^(snr_db/10), per receive antenna"},
         {"rng", kRngDescription},
         {"bits-per-trial", std::to_string(2 * cfg.n_t)}});
    os << "detector,snr_db,trials,bit_errors,ber\n";
    char num[64];
    for (const auto& curve : curves) {
        if (curve.skipped) {
            if (!quiet)
                std::cerr << "warning: detector '" << curve.detector
                          << "' omitted: " << curve.skip_reason << "\n";
            continue;
        }
        for (const auto& p : curve.points) {
            std::snprintf(num, sizeof(num), "%g", p.snr_db);
            os << curve.detector << ',' << num << ',' << cfg.trials << ',' << p.bit_errors
               << ',';
            std::snprintf(num, sizeof(num), "%.10g", p.ber);
            os << num << '\n';
        }
    }
    if (!quiet) std::cerr << "ber: " << curves.size() << " detectors -> " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metered QR decomposition and MIMO detection toolkit"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress notes on stderr");

    FactorizeArgs fa;
    auto* fcmd = app.add_subcommand("factorize", "factor a channel matrix, write R/ytilde/Q/ledger");
    fcmd->fallthrough();
    fcmd->add_option("--matrix", fa.matrix_path, "matrix file (text format)")->required();
    fcmd->add_option("--y", fa.y_path, "received vector file (single-column matrix)");
    fcmd->add_option("--method", fa.method, "clgs|stgs|hh|gr|pgr|rcpgr")->required();
    fcmd->add_option("--out", fa.out_prefix, "output path prefix");
    fcmd->add_flag("--no-q", fa.skip_q, "do not write the Q factor");

    ComplexityArgs ca;
    auto* ccmd = app.add_subcommand("complexity", "closed-form vs instrumented MUL counts");
    ccmd->fallthrough();
    ccmd->add_option("--sizes", ca.sizes, "e.g. 8x8 or 2x2..8x8 or 8x4,6x2");
    ccmd->add_option("--methods", ca.methods, "comma list of stgs,hh,gr,pgr,rcpgr");
    ccmd->add_flag("--exclude-ytilde", ca.exclude_ytilde,
                   "deduct the Q^H y product from measurements");
    ccmd->add_option("--seed", ca.seed, "seed for the measured instances");
    ccmd->add_option("--out", ca.out, "output CSV path");

    ParallelismArgs pa;
    auto* pcmd = app.add_subcommand("parallelism", "annihilation schedule statistics");
    pcmd->fallthrough();
    pcmd->add_option("--sizes", pa.sizes, "e.g. 2x2..8x8");
    pcmd->add_option("--pipes", pa.pipes, "simulate execution on this many pipes");
    pcmd->add_option("--cost", pa.cost, "cycles per task in the pipe model");
    pcmd->add_option("--out", pa.out, "output CSV path");
    pcmd->add_option("--trace", pa.trace_prefix, "prefix for per-size pipe trace CSVs");

    BerArgs ba;
    auto* bcmd = app.add_subcommand("ber", "Monte-Carlo bit-error-rate sweep");
    bcmd->fallthrough();
    bcmd->add_option("--config", ba.config_path, "key-value simulation config")->required();
    bcmd->add_option("--out", ba.out, "output CSV path");
    bcmd->add_option("--seed", ba.seed_override, "override the config seed");
    bcmd->add_option("--threads", ba.threads_override, "worker count (1 = serial)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*fcmd) return run_factorize(fa, quiet);
        if (*ccmd) return run_complexity(ca, quiet);
        if (*pcmd) return run_parallelism(pa, quiet);
        if (*bcmd) return run_ber_cmd(ba, quiet);
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return 4;
    } catch (const RankDeficiencyError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 5;
    } catch (const DegenerateRotationError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 5;
    } catch (const NumericOverflowError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 5;
    } catch (const EmptySphereError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
