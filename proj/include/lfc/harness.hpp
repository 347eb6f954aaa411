#pragma once

#include "lfc/config.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

// Benchmark execution harness: runs the configured plan cell by cell
// (algorithm x case x seed), appends results to CSV files with full
// round-trip precision, and supports resuming an interrupted campaign by
// skipping every (algorithm, case, seed) triple already present in runs.csv.

namespace lfc {

extern const char* const runs_csv_header;
// "algorithm,case,seed,best_itae,wall_time_s,evaluations,kp1,ki1,kd1,kp2,ki2,kd2"

extern const char* const convergence_csv_header;
// "algorithm,case,seed,iteration,best_fitness"

struct run_record {
    std::string algorithm;
    int case_id = 0;
    std::uint64_t seed = 0;
    double best_itae = 0.0;
    double wall_time_s = 0.0;
    long long evaluations = 0;
    pid_gains gains;
};

struct run_failure {
    std::string algorithm;
    int case_id = 0;
    std::uint64_t seed = 0;
    std::string message;
};

struct experiment_result {
    std::vector<run_record> records; // every completed run, resumed included
    std::vector<run_failure> failures;
    std::size_t executed = 0; // runs performed by this invocation
    std::size_t resumed = 0;  // runs already present and skipped
};

struct convergence_row {
    std::string algorithm;
    int case_id = 0;
    std::uint64_t seed = 0;
    int iteration = 0; // 1-based
    double best_fitness = 0.0;
};

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

std::vector<run_record> read_runs_csv(const std::string& path);
std::vector<convergence_row> read_convergence_csv(const std::string& path);

// ITAE objective for one load case under the configured plant/sim settings.
// Requires a 6-dimensional search space.
objective_spec make_objective(const app_config& cfg, const load_case& lc);

load_case case_in_config(const app_config& cfg, int id);

// Executes cfg.plan into out_dir (runs.csv, convergence.csv, manifest.json).
// on_run, when set, is called under the writer lock after each finished run.
experiment_result run_experiment(
    const app_config& cfg, const std::string& out_dir,
    const std::function<void(const run_record&, std::size_t done,
                             std::size_t total)>& on_run = {});

struct cell_summary {
    std::string algorithm;
    int case_id = 0;
    std::size_t runs = 0;
    double best = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double mean_wall_time_s = 0.0;
    std::uint64_t best_seed = 0;
    pid_gains best_gains;
};

// Per-cell distribution summaries, ordered canonically by algorithm then case.
std::vector<cell_summary> summarize(const std::vector<run_record>& records);

// Trajectory CSV: t,x1,x2,x3,x4,x5,x6,x7,u1,u2,ace1,ace2 per recorded sample.
void write_trajectory_csv(std::ostream& out, const trajectory& traj,
                          const plant_params& p);

} // namespace lfc
