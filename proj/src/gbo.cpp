#include "lfc/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lfc {
namespace {

std::vector<double> random_point(const search_space& space, rng_stream& rng) {
    std::vector<double> v(space.lower.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = space.lower[j] +
               rng.rand() * (space.upper[j] - space.lower[j]);
    return v;
}

// Four member picks != i, without replacement while the pool lasts; the pool
// refills when exhausted (only reachable in toy populations with n - 1 < 4,
// the run loops enforce n >= 6).
std::array<int, 4> pick_neighbours(int n, int i, rng_stream& rng) {
    std::array<int, 4> out{};
    std::vector<int> pool;
    auto refill = [&] {
        pool.clear();
        for (int k = 0; k < n; ++k)
            if (k != i) pool.push_back(k);
    };
    refill();
    for (int k = 0; k < 4; ++k) {
        if (pool.empty()) refill();
        const int j = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
        out[k] = pool[j];
        pool.erase(pool.begin() + j);
    }
    return out;
}

// One member pick != i: a single uniform_int over the n-1 other indices.
int pick_other(int n, int i, rng_stream& rng) {
    const int j = rng.uniform_int(0, n - 2);
    return j >= i ? j + 1 : j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

void validate(const optimizer_config& cfg) {
    if (cfg.population < 2)
        throw config_error("optimizer population must be at least 2");
    if (cfg.max_iterations < 1)
        throw config_error("optimizer max_iterations must be positive");
    if (!(cfg.pr >= 0.0 && cfg.pr <= 1.0))
        throw config_error("gbo pr must lie in [0, 1]");
    if (!(cfg.lc0 > 0.0 && cfg.lc0 < 1.0))
        throw config_error("egbo lc0 must lie in (0, 1)");
    if (!(cfg.w_max >= cfg.w_min) || !(cfg.w_min >= 0.0))
        throw config_error("pso inertia weights must satisfy 0 <= w_min <= w_max");
    if (!(cfg.c1 >= 0.0) || !(cfg.c2 >= 0.0))
        throw config_error("pso acceleration constants must be nonnegative");
    if (!(cfg.a > 0.0))
        throw config_error("sca parameter a must be positive");
}

double gbo_beta(int it, int max_it) {
    const double tau = static_cast<double>(it) / max_it;
    const double c = 1.0 - tau * tau * tau;
    return 0.2 + 1.0 * c * c;
}

double gbo_alpha_from_beta(double beta) {
    const double three_pi_half = 1.5 * std::numbers::pi;
    return std::abs(beta * std::sin(three_pi_half +
                                    std::sin(three_pi_half * beta)));
}

gbo_moves gbo_build_moves(const population_snapshot& pop, int i, double f1,
                          double f2, rng_stream& rng) {
    const int n = static_cast<int>(pop.members.size());
    const std::vector<double>& xi = pop.members[i];
    const int d = static_cast<int>(xi.size());

    gbo_moves mv;
    mv.picks = pick_neighbours(n, i, rng);
    const std::vector<double>& xa1 = pop.members[mv.picks[0]];
    const std::vector<double>& xa2 = pop.members[mv.picks[1]];

    std::vector<double> mean_a(d, 0.0);
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < d; ++j) mean_a[j] += pop.members[mv.picks[k]][j];
    for (int j = 0; j < d; ++j) mean_a[j] *= 0.25;

    std::vector<double> eta(d), dx(d), dm(d), u(d), y1(d), y2(d);
    for (int j = 0; j < d; ++j)
        eta[j] = 2.0 * rng.rand() * std::abs(mean_a[j] - xi[j]);
    for (int j = 0; j < d; ++j)
        dx[j] = rng.rand() * std::abs(0.5 * ((pop.best[j] - xi[j]) + eta[j]));
    for (int j = 0; j < d; ++j)
        dm[j] = rng.rand() * f2 * (pop.best[j] - xi[j]);
    for (int j = 0; j < d; ++j)
        u[j] = xi[j] -
               rng.randn() * 2.0 * dx[j] * xi[j] /
                   (pop.worst[j] - pop.best[j] + gbo_epsilon) +
               dm[j];
    for (int j = 0; j < d; ++j) {
        const double outer = rng.rand();
        const double inner = rng.rand();
        y1[j] = outer * (0.5 * (u[j] + xi[j]) + inner * dx[j]);
    }
    for (int j = 0; j < d; ++j) {
        const double outer = rng.rand();
        const double inner = rng.rand();
        y2[j] = outer * (0.5 * (u[j] + xi[j]) - inner * dx[j]);
    }
    mv.x_new1.resize(d);
    mv.x_new2.resize(d);
    for (int j = 0; j < d; ++j)
        mv.x_new1[j] = xi[j] -
                       rng.randn() * f1 * 2.0 * dx[j] * xi[j] /
                           (y1[j] - y2[j] + gbo_epsilon) +
                       dm[j];
    for (int j = 0; j < d; ++j) {
        const double rn = rng.randn();
        const double r = rng.rand();
        mv.x_new2[j] = pop.best[j] -
                       rn * f1 * 2.0 * dx[j] * xi[j] /
                           (y1[j] - y2[j] + gbo_epsilon) +
                       r * f2 * (xa1[j] - xa2[j]);
    }
    return mv;
}

namespace {

struct gbo_full_update {
    std::vector<double> candidate;
    gbo_moves moves;
    double f1 = 0.0;
};

gbo_full_update gbo_candidate_update_full(const population_snapshot& pop,
                                          int i, int it, int max_it,
                                          const search_space& space,
                                          rng_stream& rng) {
    const double alpha = gbo_alpha_from_beta(gbo_beta(it, max_it));
    gbo_full_update out;
    out.f1 = 2.0 * rng.rand() * alpha - alpha;
    const double f2 = 2.0 * rng.rand() * alpha - alpha;
    out.moves = gbo_build_moves(pop, i, out.f1, f2, rng);

    const std::vector<double>& xi = pop.members[i];
    const int d = static_cast<int>(xi.size());
    const double r1 = rng.rand();
    const double r2 = rng.rand();
    out.candidate.resize(d);
    for (int j = 0; j < d; ++j) {
        const double x1 = out.moves.x_new1[j];
        const double x2 = out.moves.x_new2[j];
        const double x3 = xi[j] - out.f1 * (x1 - x2);
        out.candidate[j] = r1 * (r2 * x1 + (1.0 - r2) * x2) + (1.0 - r1) * x3;
    }
    out.candidate = clamp_to_bounds(std::move(out.candidate), space);
    return out;
}

} // namespace

std::vector<double> gbo_candidate_update(const population_snapshot& pop,
                                         int i, int it, int max_it,
                                         const search_space& space,
                                         rng_stream& rng) {
    return gbo_candidate_update_full(pop, i, it, max_it, space, rng).candidate;
}

std::vector<double> leo(const population_snapshot& pop, int i,
                        const gbo_moves& moves, std::vector<double> candidate,
                        double f1, double pr, const search_space& space,
                        rng_stream& rng) {
    if (rng.rand() >= pr) return candidate;
    const int n = static_cast<int>(pop.members.size());
    const int d = static_cast<int>(candidate.size());
    const bool anchor_candidate = rng.rand() < 0.5;
    const double rand1 = rng.rand();
    double th1 = 1.0, th2 = 1.0, th3 = 1.0;
    if (rand1 < 0.5) {
        th1 = 2.0 * rng.rand();
        th2 = rng.rand();
        th3 = rng.rand();
    }
    const double mu1 = 2.0 * rng.rand() - 1.0;
    const double mu2 = 2.0 * rng.rand() - 1.0;
    const std::vector<double>& xr = pop.members[pick_other(n, i, rng)];
    const std::vector<double>& xa1 = pop.members[moves.picks[0]];
    const std::vector<double>& xa2 = pop.members[moves.picks[1]];
    const std::vector<double>& base = anchor_candidate ? candidate : pop.best;

    std::vector<double> out(d);
    for (int j = 0; j < d; ++j) {
        const double jump =
            mu1 * (th1 * pop.best[j] - th2 * xr[j]) +
            mu2 * f1 * 0.5 *
                (th3 * (moves.x_new2[j] - moves.x_new1[j]) +
                 th2 * (xa1[j] - xa2[j]));
        out[j] = base[j] + jump;
    }
    return clamp_to_bounds(std::move(out), space);
}

std::pair<double, double> rank_adaptive_params(int rank_index, int n,
                                               rng_stream& rng) {
    if (rng.rand() < 0.5) {
        const int a1 = rng.uniform_int(1, n);
        const double f1 = static_cast<double>(a1) / n + 0.1 * rng.randn();
        const int a2 = rng.uniform_int(1, n);
        const double f2 = static_cast<double>(a2) / n + 0.1 * rng.randn();
        return {f1, f2};
    }
    const double base = static_cast<double>(rank_index) / n;
    const double f1 = base + 0.1 * rng.randn();
    const double f2 = base + 0.1 * rng.randn();
    return {f1, f2};
}

std::vector<double> egbo_crossover(const std::vector<double>& x_current,
                                   const std::vector<double>& x_new1,
                                   const std::vector<double>& x_new2,
                                   int rank_index, int n, rng_stream& rng) {
    const int d = static_cast<int>(x_current.size());
    const double pc_r =
        static_cast<double>(rank_index) / n + 0.1 * rng.randn();
    const int j_rand = rng.uniform_int(0, d - 1);
    std::vector<double> out(d);
    for (int j = 0; j < d; ++j) {
        if (rng.rand() < pc_r || j == j_rand)
            out[j] = rng.rand() < 0.5 ? x_new1[j] : x_new2[j];
        else
            out[j] = x_current[j];
    }
    return out;
}

std::pair<std::vector<double>, double> mleo(const population_snapshot& pop,
                                            int i, const gbo_moves& moves,
                                            std::vector<double> candidate,
                                            int it, int max_it, double lc,
                                            rng_stream& rng) {
    const double next_lc = logistic_next(lc);
    if (rng.rand() >= lc) return {std::move(candidate), next_lc};
    const int n = static_cast<int>(pop.members.size());
    const int d = static_cast<int>(candidate.size());
    const bool early =
        rng.rand() < 0.5 * (1.0 - static_cast<double>(it) / max_it);
    const auto [f1, f2] = rank_adaptive_params(i + 1, n, rng);
    const std::vector<double>& xr = pop.members[pick_other(n, i, rng)];
    const std::vector<double>& xa1 = pop.members[moves.picks[0]];
    const std::vector<double>& xa2 = pop.members[moves.picks[1]];
    const std::vector<double>& anchor = early ? pop.best3 : pop.best;

    std::vector<double> out(d);
    for (int j = 0; j < d; ++j)
        out[j] = anchor[j] + f1 * (pop.best2[j] - xr[j]) +
                 f2 * (xa1[j] - xa2[j]);
    return {std::move(out), next_lc};
}

double logistic_next(double lc) { return 4.0 * lc * (1.0 - lc); }

run_trace run_gbo(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    if (cfg.population < 6)
        throw config_error(
            "gbo requires a population of at least 6 (four distinct "
            "neighbour picks)");
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;

    std::vector<std::vector<double>> members(n);
    std::vector<double> fitness(n);
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        members[i] = random_point(obj.space, rng);
        fitness[i] = obj.eval(members[i]);
        ++evals;
    }
    int bi = 0, wi = 0;
    for (int i = 1; i < n; ++i) {
        if (fitness[i] < fitness[bi]) bi = i;
        if (fitness[i] > fitness[wi]) wi = i;
    }
    std::vector<double> best_vec = members[bi];
    std::vector<double> worst_vec = members[wi];
    double best_fit = fitness[bi];
    double worst_fit = fitness[wi];

    run_trace tr;
    tr.algorithm = "gbo";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        population_snapshot snap;
        snap.members = members;
        snap.fitness = fitness;
        snap.best = best_vec;
        snap.worst = worst_vec;
        for (int i = 0; i < n; ++i) {
            gbo_full_update up = gbo_candidate_update_full(
                snap, i, it, cfg.max_iterations, obj.space, rng);
            std::vector<double> cand =
                leo(snap, i, up.moves, std::move(up.candidate), up.f1,
                    cfg.pr, obj.space, rng);
            const double f = obj.eval(cand);
            ++evals;
            members[i] = std::move(cand);
            fitness[i] = f; // unconditional replacement
            if (f < best_fit) {
                best_fit = f;
                best_vec = members[i];
            }
            if (f > worst_fit) {
                worst_fit = f;
                worst_vec = members[i];
            }
        }
        tr.best_fitness_per_iteration.push_back(best_fit);
    }
    tr.final_gains = best_vec;
    tr.final_fitness = best_fit;
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

run_trace run_egbo(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    if (cfg.population < 6)
        throw config_error(
            "egbo requires a population of at least 6 (four distinct "
            "neighbour picks)");
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;

    std::vector<std::vector<double>> members(n);
    std::vector<double> fitness(n);
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        members[i] = random_point(obj.space, rng);
        fitness[i] = obj.eval(members[i]);
        ++evals;
    }
    int bi = 0, wi = 0;
    for (int i = 1; i < n; ++i) {
        if (fitness[i] < fitness[bi]) bi = i;
        if (fitness[i] > fitness[wi]) wi = i;
    }
    std::vector<double> best_vec = members[bi];
    std::vector<double> worst_vec = members[wi];
    double best_fit = fitness[bi];
    double worst_fit = fitness[wi];
    double lc = cfg.lc0;

    run_trace tr;
    tr.algorithm = "egbo";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    std::vector<int> order(n);
    for (int it = 1; it <= cfg.max_iterations; ++it) {
        // Sort ascending by fitness; candidate position = rank.
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return fitness[a] < fitness[b];
        });
        population_snapshot snap;
        snap.members.resize(n);
        snap.fitness.resize(n);
        for (int r = 0; r < n; ++r) {
            snap.members[r] = members[order[r]];
            snap.fitness[r] = fitness[order[r]];
        }
        snap.best = best_vec;
        snap.worst = worst_vec;
        snap.best2 = snap.members[1];
        snap.best3 = snap.members[2];
        members = snap.members;
        fitness = snap.fitness;

        for (int i = 0; i < n; ++i) {
            const auto [f1, f2] = rank_adaptive_params(i + 1, n, rng);
            gbo_moves mv = gbo_build_moves(snap, i, f1, f2, rng);
            std::vector<double> cand = egbo_crossover(
                snap.members[i], mv.x_new1, mv.x_new2, i + 1, n, rng);
            auto [escaped, ignored_lc] =
                mleo(snap, i, mv, std::move(cand), it, cfg.max_iterations,
                     lc, rng);
            (void)ignored_lc;
            std::vector<double> evaluated =
                clamp_to_bounds(std::move(escaped), obj.space);
            const double f = obj.eval(evaluated);
            ++evals;
            members[i] = std::move(evaluated);
            fitness[i] = f; // unconditional replacement
            if (f < best_fit) {
                best_fit = f;
                best_vec = members[i];
            }
            if (f > worst_fit) {
                worst_fit = f;
                worst_vec = members[i];
            }
        }
        lc = logistic_next(lc); // once per iteration
        tr.best_fitness_per_iteration.push_back(best_fit);
    }
    tr.final_gains = best_vec;
    tr.final_fitness = best_fit;
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

} // namespace lfc
