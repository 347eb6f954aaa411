#include "lfc/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace lfc {
namespace {

std::vector<double> random_point(const search_space& space, rng_stream& rng) {
    std::vector<double> v(space.lower.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = space.lower[j] +
               rng.rand() * (space.upper[j] - space.lower[j]);
    return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct leaderboard {
    // Best-so-far leader slots, ascending by fitness.
    std::vector<std::vector<double>> vecs;
    std::vector<double> fits;

    explicit leaderboard(int slots)
        : vecs(slots), fits(slots, std::numeric_limits<double>::infinity()) {}

    void offer(const std::vector<double>& x, double f) {
        for (std::size_t s = 0; s < fits.size(); ++s) {
            if (f < fits[s]) {
                for (std::size_t t = fits.size() - 1; t > s; --t) {
                    fits[t] = fits[t - 1];
                    vecs[t] = vecs[t - 1];
                }
                fits[s] = f;
                vecs[s] = x;
                return;
            }
        }
    }
};

} // namespace

run_trace run_pso(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;
    const int d = obj.dimension;

    std::vector<std::vector<double>> x(n), v(n), pbest(n);
    std::vector<double> fit(n), pbest_fit(n);
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = random_point(obj.space, rng);
        v[i].assign(d, 0.0);
        fit[i] = obj.eval(x[i]);
        ++evals;
        pbest[i] = x[i];
        pbest_fit[i] = fit[i];
    }
    int bi = 0;
    for (int i = 1; i < n; ++i)
        if (pbest_fit[i] < pbest_fit[bi]) bi = i;
    std::vector<double> gbest = pbest[bi];
    double gbest_fit = pbest_fit[bi];

    std::vector<double> vmax(d);
    for (int j = 0; j < d; ++j)
        vmax[j] = 0.2 * (obj.space.upper[j] - obj.space.lower[j]);

    run_trace tr;
    tr.algorithm = "pso";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    const int T = cfg.max_iterations;
    for (int it = 1; it <= T; ++it) {
        const double w =
            T > 1 ? cfg.w_max - (cfg.w_max - cfg.w_min) *
                                    (static_cast<double>(it - 1) / (T - 1))
                  : cfg.w_max;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                const double r1 = rng.rand();
                const double r2 = rng.rand();
                double vj = w * v[i][j] +
                            cfg.c1 * r1 * (pbest[i][j] - x[i][j]) +
                            cfg.c2 * r2 * (gbest[j] - x[i][j]);
                vj = std::clamp(vj, -vmax[j], vmax[j]);
                v[i][j] = vj;
                x[i][j] += vj;
            }
            x[i] = clamp_to_bounds(std::move(x[i]), obj.space);
            fit[i] = obj.eval(x[i]);
            ++evals;
            if (fit[i] < pbest_fit[i]) {
                pbest_fit[i] = fit[i];
                pbest[i] = x[i];
            }
            if (fit[i] < gbest_fit) { // asynchronous global-best update
                gbest_fit = fit[i];
                gbest = x[i];
            }
        }
        tr.best_fitness_per_iteration.push_back(gbest_fit);
    }
    tr.final_gains = gbest;
    tr.final_fitness = gbest_fit;
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

run_trace run_gwo(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    if (cfg.population < 4)
        throw config_error("gwo requires a population of at least 4");
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;
    const int d = obj.dimension;

    std::vector<std::vector<double>> x(n);
    std::vector<double> fit(n);
    leaderboard leaders(3);
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = random_point(obj.space, rng);
        fit[i] = obj.eval(x[i]);
        ++evals;
        leaders.offer(x[i], fit[i]);
    }

    run_trace tr;
    tr.algorithm = "gwo";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    const int T = cfg.max_iterations;
    std::vector<double> cand(d);
    for (int it = 1; it <= T; ++it) {
        const double a =
            T > 1 ? 2.0 - 2.0 * (static_cast<double>(it - 1) / (T - 1)) : 2.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int s = 0; s < 3; ++s) {
                    const double r1 = rng.rand();
                    const double r2 = rng.rand();
                    const double A = 2.0 * a * r1 - a;
                    const double C = 2.0 * r2;
                    const double D =
                        std::abs(C * leaders.vecs[s][j] - x[i][j]);
                    acc += leaders.vecs[s][j] - A * D;
                }
                cand[j] = acc / 3.0;
            }
            std::vector<double> clamped = clamp_to_bounds(cand, obj.space);
            const double f = obj.eval(clamped);
            ++evals;
            x[i] = std::move(clamped);
            fit[i] = f;
            leaders.offer(x[i], f);
        }
        tr.best_fitness_per_iteration.push_back(leaders.fits[0]);
    }
    tr.final_gains = leaders.vecs[0];
    tr.final_fitness = leaders.fits[0];
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

run_trace run_sca(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;
    const int d = obj.dimension;

    std::vector<std::vector<double>> x(n);
    std::vector<double> fit(n);
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = random_point(obj.space, rng);
        fit[i] = obj.eval(x[i]);
        ++evals;
    }
    int bi = 0;
    for (int i = 1; i < n; ++i)
        if (fit[i] < fit[bi]) bi = i;
    std::vector<double> best = x[bi];
    double best_fit = fit[bi];

    run_trace tr;
    tr.algorithm = "sca";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    const int T = cfg.max_iterations;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int it = 1; it <= T; ++it) {
        const double r1 = cfg.a - it * cfg.a / T;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                const double r2 = two_pi * rng.rand();
                const double r3 = 2.0 * rng.rand();
                const double r4 = rng.rand();
                const double pull = std::abs(r3 * best[j] - x[i][j]);
                x[i][j] += r4 < 0.5 ? r1 * std::sin(r2) * pull
                                    : r1 * std::cos(r2) * pull;
            }
            x[i] = clamp_to_bounds(std::move(x[i]), obj.space);
            fit[i] = obj.eval(x[i]);
            ++evals;
            if (fit[i] < best_fit) {
                best_fit = fit[i];
                best = x[i];
            }
        }
        tr.best_fitness_per_iteration.push_back(best_fit);
    }
    tr.final_gains = best;
    tr.final_fitness = best_fit;
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

run_trace run_choa(const objective_spec& obj, const optimizer_config& cfg) {
    validate(cfg);
    validate(obj.space);
    if (cfg.population < 4)
        throw config_error("choa requires a population of at least 4");
    const auto t0 = std::chrono::steady_clock::now();
    mt_stream rng(cfg.seed);
    const int n = cfg.population;
    const int d = obj.dimension;

    std::vector<std::vector<double>> x(n);
    std::vector<double> fit(n);
    leaderboard leaders(4); // attacker, barrier, chaser, driver
    long long evals = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = random_point(obj.space, rng);
        fit[i] = obj.eval(x[i]);
        ++evals;
        leaders.offer(x[i], fit[i]);
    }

    run_trace tr;
    tr.algorithm = "choa";
    tr.seed = cfg.seed;
    tr.best_fitness_per_iteration.reserve(cfg.max_iterations);
    const int T = cfg.max_iterations;
    double m = 0.7; // chaotic mixing value, logistic map
    std::vector<double> cand(d);
    for (int it = 1; it <= T; ++it) {
        const double fcoef = 2.5 - it * 2.5 / T;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int s = 0; s < 4; ++s) {
                    const double r1 = rng.rand();
                    const double r2 = rng.rand();
                    const double a = 2.0 * fcoef * r1 - fcoef;
                    const double c = 2.0 * r2;
                    const double dd =
                        std::abs(c * leaders.vecs[s][j] - m * x[i][j]);
                    acc += leaders.vecs[s][j] - a * dd;
                }
                cand[j] = acc / 4.0;
            }
            std::vector<double> clamped = clamp_to_bounds(cand, obj.space);
            const double f = obj.eval(clamped);
            ++evals;
            x[i] = std::move(clamped);
            fit[i] = f;
            leaders.offer(x[i], f);
        }
        m = logistic_next(m); // once per iteration
        tr.best_fitness_per_iteration.push_back(leaders.fits[0]);
    }
    tr.final_gains = leaders.vecs[0];
    tr.final_fitness = leaders.fits[0];
    tr.evaluations = evals;
    tr.wall_time_s = seconds_since(t0);
    return tr;
}

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {"egbo", "gbo", "pso",
                                                   "gwo",  "sca", "choa"};
    return names;
}

run_trace run_algorithm(const std::string& name, const objective_spec& obj,
                        const optimizer_config& cfg) {
    if (name == "egbo") return run_egbo(obj, cfg);
    if (name == "gbo") return run_gbo(obj, cfg);
    if (name == "pso") return run_pso(obj, cfg);
    if (name == "gwo") return run_gwo(obj, cfg);
    if (name == "sca") return run_sca(obj, cfg);
    if (name == "choa") return run_choa(obj, cfg);
    throw config_error("unknown algorithm: " + name);
}

} // namespace lfc
