#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qrmimo/qrd.hpp"

namespace qrmimo {

// One Givens annihilation: zero element (target_row, target_col) using the
// pivot row equal to the target column. Indices are 0-based.
struct AnnihilationTask {
    std::size_t target_row = 0;
    std::size_t target_col = 0;
    std::size_t pivot_row() const { return target_col; }

    bool operator==(const AnnihilationTask&) const = default;
};

struct RotationSchedule {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<std::vector<AnnihilationTask>> rounds;

    std::size_t total_tasks() const {
        std::size_t n = 0;
        for (const auto& r : rounds) n += r.size();
        return n;
    }
};

// Task (i, j) lands in round i + j (0-based rows/cols), compacted to
// consecutive indices. Tasks within a round touch pairwise disjoint rows.
RotationSchedule build_schedule(std::size_t n_rows, std::size_t n_cols);

// Fraction of tasks located in rounds of size >= 2; 0 for an empty schedule.
double parallelism_gain(const RotationSchedule& s);

std::size_t sequential_steps(const RotationSchedule& s);  // total tasks
std::size_t parallel_steps(const RotationSchedule& s);    // number of rounds

// Task DAG of the stable Gram-Schmidt sweep: per iteration one
// normalization task followed by one round holding that iteration's
// independent trailing-column updates.
struct DagSummary {
    std::size_t tasks = 0;
    std::size_t rounds = 0;
    double gain = 0.0;
};
DagSummary stgs_parallelism(std::size_t n_cols);

struct PipeTrace {
    struct Slot {
        std::size_t pipe = 0;
        std::optional<AnnihilationTask> task;  // empty slot = free pipe
    };
    std::size_t n_pipes = 0;
    std::size_t cost_per_task = 1;
    std::vector<std::vector<Slot>> cycles;  // one Slot per pipe per cycle
    std::size_t makespan = 0;
};

// Greedy earliest-start assignment; a task may start only once all tasks of
// earlier rounds have finished.
PipeTrace simulate_pipes(const RotationSchedule& s, std::size_t n_pipes,
                         std::size_t cost_per_task);

// Round-parallel variant of qrd_pgr. Tasks inside a round write disjoint
// rows and columns, so the result and ledger are identical to qrd_pgr for
// any thread count; this is the OpenMP kernel, qrd_pgr the serial reference.
QRFactorization qrd_pgr_parallel(const ComplexMatrix& h, std::span<const Complex> y);

}  // namespace qrmimo
