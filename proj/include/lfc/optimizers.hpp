#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lfc/rng.hpp"
#include "lfc/sim.hpp"

namespace lfc {

struct objective_spec {
    int dimension = 6;
    search_space space;
    // Must be deterministic for a fixed decision vector.
    std::function<double(const std::vector<double>&)> eval;
};

struct optimizer_config {
    int population = 100;
    int max_iterations = 500;
    std::uint64_t seed = 0;
    double pr = 0.5;    // gbo: local-escape gate probability
    double lc0 = 0.7;   // egbo: initial logistic chaotic value
    double w_max = 0.9; // pso
    double w_min = 0.2; // pso
    double c1 = 2.0;    // pso
    double c2 = 2.0;    // pso
    double a = 2.0;     // sca
};

void validate(const optimizer_config& cfg);

struct run_trace {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<double> best_fitness_per_iteration; // length max_iterations
    std::vector<double> final_gains;                // best decision vector
    double final_fitness = 0.0;
    double wall_time_s = 0.0;
    long long evaluations = 0;
};

// Leaders + members snapshot taken at the start of an iteration, feeding the
// candidate-update operators. best/worst are the best- and worst-so-far of
// the whole run; best2/best3 are the 2nd/3rd members of the current
// population sorted ascending by fitness (used by the modified escape move).
struct population_snapshot {
    std::vector<std::vector<double>> members;
    std::vector<double> fitness;
    std::vector<double> best;
    std::vector<double> worst;
    std::vector<double> best2;
    std::vector<double> best3;
};

// ---------------------------------------------------------------------------
// Draw-order contract
//
// Every operator consumes the rng_stream in a fixed, documented order so that
// scripted streams can reproduce each update by hand (the unit tests pin
// these sequences). Quantities computed per dimension draw in a single j-loop
// in the order the defining expression reads. The orders are:
//
//   gbo_build_moves (shared by both gradient-based optimizers):
//     1. four neighbour picks a1..a4 (uniform_int over the indices != i,
//        without replacement while the pool lasts; the pool refills when
//        exhausted, which only happens for toy populations with n - 1 < 4)
//     2. eta:    d rands          eta_j   = 2 rand |mean(a)_j - x_ij|
//     3. dx:     d rands          dx_j    = rand |((best_j-x_ij)+eta_j)/2|
//     4. dm:     d rands          dm_j    = rand F2 (best_j - x_ij)
//     5. u:      d randns         u_j     = x_ij - randn 2 dx_j x_ij /
//                                           (worst_j - best_j + eps) + dm_j
//     6. y1:     per j: rand, rand   y1_j = rand ((u_j+x_ij)/2 + rand dx_j)
//     7. y2:     per j: rand, rand   y2_j = rand ((u_j+x_ij)/2 - rand dx_j)
//     8. x_new1: d randns         X1_j    = x_ij - randn F1 2 dx_j x_ij /
//                                           (y1_j - y2_j + eps) + dm_j
//     9. x_new2: per j: randn, rand
//                                 X2_j    = best_j - randn F1 2 dx_j x_ij /
//                                           (y1_j - y2_j + eps)
//                                           + rand F2 (a1_j - a2_j)
//
//   gbo_candidate_update: F1 (one rand), F2 (one rand) via the beta/alpha
//     schedule, then gbo_build_moves, then blend scalars r1, r2:
//     x = r1 (r2 X1 + (1-r2) X2) + (1-r1) X3,  X3 = x_i - F1 (X1 - X2).
//
//   leo: gate rand (returns input unchanged if >= pr); coin rand (adds the
//     jump to the blended candidate if < 0.5, else to best); rand1; if
//     rand1 < 0.5 three more rands give theta1 = 2 rand, theta2 = rand,
//     theta3 = rand (all exactly 1 otherwise); mu1 = 2 rand - 1;
//     mu2 = 2 rand - 1; one uniform_int picks x_r among indices != i.
//     jump = mu1 (theta1 best - theta2 x_r)
//          + mu2 F1 (theta3 (X2 - X1) + theta2 (a1 - a2)) / 2.
//
//   rank_adaptive_params: gate rand; if < 0.5: uniform_int(1,n), randn,
//     uniform_int(1,n), randn (F = pick/n + 0.1 randn); else randn, randn
//     (F = rank/n + 0.1 randn).
//
//   egbo_crossover: one randn (pc_r = rank/n + 0.1 randn); one
//     uniform_int(0,d-1) = forced dimension; then per j one rand gate
//     (always drawn), plus one rand coin only when the gene is taken
//     (coin < 0.5 -> X1_j, else X2_j).
//
//   mleo: gate rand (candidate unchanged if >= lc); branch rand
//     (early explore when < 0.5 (1 - it/max_it)); fresh rank_adaptive_params
//     draws; one uniform_int picks x_r among indices != i. Early anchors at
//     best3, late at best; x = anchor + F1 (best2 - x_r) + F2 (a1 - a2),
//     reusing the candidate's a1/a2 picks.
// ---------------------------------------------------------------------------

inline constexpr double gbo_epsilon = 1e-8;

// Adaptive-step schedule of the plain gradient-based optimizer
// (iterations are 1-based; beta tapers 1.2 -> 0.2, F = 2 rand alpha - alpha).
double gbo_beta(int it, int max_it);
double gbo_alpha_from_beta(double beta);

struct gbo_moves {
    std::vector<double> x_new1;
    std::vector<double> x_new2;
    std::array<int, 4> picks{}; // a1..a4 member indices
};

gbo_moves gbo_build_moves(const population_snapshot& pop, int i, double f1,
                          double f2, rng_stream& rng);

std::vector<double> gbo_candidate_update(const population_snapshot& pop,
                                         int i, int it, int max_it,
                                         const search_space& space,
                                         rng_stream& rng);

// Local escaping operator; `candidate` is the blended vector produced by
// gbo_candidate_update, `f1` the same adaptive factor used there.
std::vector<double> leo(const population_snapshot& pop, int i,
                        const gbo_moves& moves, std::vector<double> candidate,
                        double f1, double pr, const search_space& space,
                        rng_stream& rng);

// Rank-based adaptive factors; rank_index is the candidate's 1-based
// position in the ascending fitness order.
std::pair<double, double> rank_adaptive_params(int rank_index, int n,
                                               rng_stream& rng);

std::vector<double> egbo_crossover(const std::vector<double>& x_current,
                                   const std::vector<double>& x_new1,
                                   const std::vector<double>& x_new2,
                                   int rank_index, int n, rng_stream& rng);

// Modified escape move; returns the (possibly unchanged) vector plus the
// next chaotic value 4 lc (1 - lc). The run loop applies the chaotic update
// once per iteration, not per candidate.
std::pair<std::vector<double>, double> mleo(const population_snapshot& pop,
                                            int i, const gbo_moves& moves,
                                            std::vector<double> candidate,
                                            int it, int max_it, double lc,
                                            rng_stream& rng);

double logistic_next(double lc);

run_trace run_gbo(const objective_spec& objective, const optimizer_config& cfg);
run_trace run_egbo(const objective_spec& objective, const optimizer_config& cfg);
run_trace run_pso(const objective_spec& objective, const optimizer_config& cfg);
run_trace run_gwo(const objective_spec& objective, const optimizer_config& cfg);
run_trace run_sca(const objective_spec& objective, const optimizer_config& cfg);
run_trace run_choa(const objective_spec& objective, const optimizer_config& cfg);

// Canonical labels, in the reporting order used throughout the artifact.
const std::vector<std::string>& algorithm_names();
run_trace run_algorithm(const std::string& name, const objective_spec& objective,
                        const optimizer_config& cfg);

} // namespace lfc
