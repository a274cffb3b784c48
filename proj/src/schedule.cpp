#include "qrmimo/schedule.hpp"

#include <algorithm>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrmimo {

RotationSchedule build_schedule(std::size_t n_rows, std::size_t n_cols) {
    if (n_rows < n_cols || n_cols < 1)
        throw DimensionError("build_schedule: requires n_rows >= n_cols >= 1");
    RotationSchedule s;
    s.n_rows = n_rows;
    s.n_cols = n_cols;
    if (n_rows < 2) return s;

    // Task (i, j) lands in round i + j - 1 (0-based); the row sets of any
    // two tasks sharing a round are disjoint and every dependency sits in a
    // strictly earlier round.
    const std::size_t max_round = (n_rows - 1) + std::min(n_cols, n_rows - 1) - 1;
    std::vector<std::vector<AnnihilationTask>> rounds(max_round);
    for (std::size_t col = 0; col < n_cols; ++col)
        for (std::size_t row = col + 1; row < n_rows; ++row)
            rounds[row + col - 1].push_back({row, col});
    for (auto& r : rounds)
        std::sort(r.begin(), r.end(), [](const AnnihilationTask& a, const AnnihilationTask& b) {
            return a.target_col < b.target_col;
        });
    // Compact away any empty rounds so indices are consecutive.
    for (auto& r : rounds)
        if (!r.empty()) s.rounds.push_back(std::move(r));
    return s;
}

double parallelism_gain(const RotationSchedule& s) {
    const std::size_t total = s.total_tasks();
    if (total == 0) return 0.0;
    std::size_t parallel = 0;
    for (const auto& r : s.rounds)
        if (r.size() >= 2) parallel += r.size();
    return static_cast<double>(parallel) / static_cast<double>(total);
}

std::size_t sequential_steps(const RotationSchedule& s) { return s.total_tasks(); }

std::size_t parallel_steps(const RotationSchedule& s) { return s.rounds.size(); }

DagSummary stgs_parallelism(std::size_t n_cols) {
    DagSummary d;
    if (n_cols == 0) return d;
    std::size_t parallel = 0;
    for (std::size_t i = 0; i < n_cols; ++i) {
        d.tasks += 1;  // normalization of column i
        d.rounds += 1;
        const std::size_t updates = n_cols - 1 - i;
        if (updates > 0) {
            d.tasks += updates;
            d.rounds += 1;
            if (updates >= 2) parallel += updates;
        }
    }
    d.gain = d.tasks ? static_cast<double>(parallel) / static_cast<double>(d.tasks) : 0.0;
    return d;
}

PipeTrace simulate_pipes(const RotationSchedule& s, std::size_t n_pipes,
                         std::size_t cost_per_task) {
    if (n_pipes < 1) throw DimensionError("simulate_pipes: need at least one pipe");
    if (cost_per_task < 1) throw DimensionError("simulate_pipes: cost must be positive");
    PipeTrace tr;
    tr.n_pipes = n_pipes;
    tr.cost_per_task = cost_per_task;

    std::size_t cycle = 0;
    for (const auto& round : s.rounds) {
        // All tasks of earlier rounds are finished; fill the pipes in waves.
        for (std::size_t first = 0; first < round.size(); first += n_pipes) {
            const std::size_t wave = std::min(n_pipes, round.size() - first);
            for (std::size_t c = 0; c < cost_per_task; ++c) {
                std::vector<PipeTrace::Slot> slots(n_pipes);
                for (std::size_t p = 0; p < n_pipes; ++p) {
                    slots[p].pipe = p;
                    if (p < wave) slots[p].task = round[first + p];
                }
                tr.cycles.push_back(std::move(slots));
            }
            cycle += cost_per_task;
        }
    }
    tr.makespan = cycle;
    return tr;
}

namespace {

struct PgrState {
    ComplexMatrix work;
    ComplexMatrix u;
};

QRFactorization finish_pgr(PgrState st, const ComplexMatrix& h, std::span<const Complex> y,
                           CostLedger ledger) {
    const std::size_t nr = h.rows();
    const std::size_t nt = h.cols();
    for (std::size_t i = 0; i < nt; ++i)
        if (std::abs(st.work(i, i)) < kRankTol)
            throw RankDeficiencyError("pgr: rank-deficient triangle");

    QRFactorization f;
    f.method = QrdMethod::Pgr;
    f.ledger = ledger;
    ComplexMatrix r(nt, nt);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = i; j < nt; ++j) r(i, j) = st.work(i, j);
    ComplexMatrix q(nr, nt);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nt; ++j) q(i, j) = st.u(i, j);
    f.y_tilde = apply_hermitian(q, y, f.ledger);
    f.r = std::move(r);
    f.q = std::move(q);
    return f;
}

void run_task(PgrState& st, const AnnihilationTask& t, std::size_t nt, CostLedger& ledger) {
    const std::size_t col = t.target_col;
    const std::size_t row = t.target_row;
    if (st.work(row, col) == Complex(0.0, 0.0)) return;
    const GivensRotation g = detail::annihilation_rotation(st.work, col, row, ledger);
    detail::apply_rotation_rows(st.work, g, col, row, col, nt, ledger);
    st.work(col, col) = Complex(g.r, 0.0);
    st.work(row, col) = Complex(0.0, 0.0);
    detail::apply_rotation_cols(st.u, g, col, row, ledger);
}

}  // namespace

QRFactorization qrd_pgr(const ComplexMatrix& h, std::span<const Complex> y) {
    if (h.rows() < h.cols())
        throw DimensionError("factorization requires n_r >= n_t");
    if (y.size() != h.rows())
        throw DimensionError("received vector length does not match n_r");
    const RotationSchedule schedule = build_schedule(h.rows(), h.cols());

    PgrState st{h, ComplexMatrix::identity(h.rows())};
    CostLedger ledger;
    for (const auto& round : schedule.rounds)
        for (const auto& task : round)
            run_task(st, task, h.cols(), ledger);
    return finish_pgr(std::move(st), h, y, ledger);
}

QRFactorization qrd_pgr_parallel(const ComplexMatrix& h, std::span<const Complex> y) {
    if (h.rows() < h.cols())
        throw DimensionError("factorization requires n_r >= n_t");
    if (y.size() != h.rows())
        throw DimensionError("received vector length does not match n_r");
    const RotationSchedule schedule = build_schedule(h.rows(), h.cols());

    PgrState st{h, ComplexMatrix::identity(h.rows())};
    CostLedger ledger;
    const std::size_t nt = h.cols();
    for (const auto& round : schedule.rounds) {
        std::vector<CostLedger> ledgers(round.size());
        std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (round.size() >= 2)
#endif
        for (std::size_t k = 0; k < round.size(); ++k) {
            try {
                run_task(st, round[k], nt, ledgers[k]);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        // Per-task tallies merge in task order; the totals are the same for
        // any thread count.
        for (const auto& l : ledgers) ledger += l;
    }
    return finish_pgr(std::move(st), h, y, ledger);
}

}  // namespace qrmimo
