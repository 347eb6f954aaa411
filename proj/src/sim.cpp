#include "lfc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lfc {
namespace {

constexpr double divergence_limit = 1e6;

using mat9 = std::array<std::array<double, 9>, 9>;

mat9 matmul(const mat9& a, const mat9& b) {
    mat9 r{};
    for (int i = 0; i < 9; ++i)
        for (int k = 0; k < 9; ++k) {
            const double aik = a[i][k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 9; ++j) r[i][j] += aik * b[k][j];
        }
    return r;
}

int step_count(const sim_config& cfg) {
    return static_cast<int>(std::llround(cfg.t_final / cfg.dt));
}

} // namespace

void validate(const sim_config& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw config_error("sim.dt must be positive and finite");
    if (!(cfg.t_final >= cfg.dt) || !std::isfinite(cfg.t_final))
        throw config_error("sim.t_final must be finite and at least dt");
    const double ratio = cfg.t_final / cfg.dt;
    if (std::abs(ratio - std::llround(ratio)) > 1e-6)
        throw config_error("sim.t_final must be an integer multiple of dt");
    if (cfg.record_stride < 1)
        throw config_error("sim.record_stride must be a positive integer");
}

void validate(const load_case& lc) {
    if (!(lc.w1 >= 0.0 && lc.w1 <= 1.0) || !std::isfinite(lc.w1))
        throw config_error("case w1 must lie in [0, 1]");
    if (!(lc.w2 >= 0.0 && lc.w2 <= 1.0) || !std::isfinite(lc.w2))
        throw config_error("case w2 must lie in [0, 1]");
}

std::array<load_case, 5> case_catalog() {
    return {{{1, 0.15, 0.15},
             {2, 0.25, 0.0},
             {3, 0.0, 0.25},
             {4, 0.20, 0.10},
             {5, 0.10, 0.20}}};
}

load_case case_by_id(int id) {
    for (const load_case& lc : case_catalog())
        if (lc.id == id) return lc;
    throw config_error("unknown case id " + std::to_string(id) +
                       " (expected 1..5)");
}

void validate(const search_space& space) {
    if (space.lower.size() != space.upper.size() || space.lower.empty())
        throw config_error("search space bounds must be non-empty and equal length");
    for (std::size_t j = 0; j < space.lower.size(); ++j) {
        if (!std::isfinite(space.lower[j]) || !std::isfinite(space.upper[j]))
            throw config_error("search space bounds must be finite");
        if (!(space.lower[j] < space.upper[j]))
            throw config_error("search space lower bound must be strictly below upper");
    }
}

std::vector<double> clamp_to_bounds(std::vector<double> v,
                                    const search_space& space) {
    for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = std::clamp(v[j], space.lower[j], space.upper[j]);
    return v;
}

pid_gains gains_from_vector(const std::vector<double>& v) {
    if (v.size() != 6)
        throw config_error("gain vector must have exactly 6 values, got " +
                           std::to_string(v.size()));
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

std::vector<double> gains_to_vector(const pid_gains& g) {
    return {g.kp1, g.ki1, g.kd1, g.kp2, g.ki2, g.kd2};
}

divergence_error::divergence_error(double t, double mag)
    : std::runtime_error("simulation diverged at t = " + std::to_string(t) +
                         " s (|state| = " + std::to_string(mag) + ")"),
      t_divergence(t), magnitude(mag) {}

transition_map build_transition_map(const closed_loop_matrix& cl,
                                    double w1, double w2, double dt) {
    const mat9& a = cl.a;
    const mat9 a2 = matmul(a, a);
    const mat9 a3 = matmul(a2, a);
    const mat9 a4 = matmul(a3, a);

    const double h = dt;
    const double h2 = h * h / 2.0;
    const double h3 = h * h * h / 6.0;
    const double h4 = h * h * h * h / 24.0;

    std::array<double, 9> c{};
    for (int i = 0; i < 9; ++i) c[i] = cl.b_w[i][0] * w1 + cl.b_w[i][1] * w2;

    transition_map tm;
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            double mij = h * a[i][j] + h2 * a2[i][j] + h3 * a3[i][j] +
                         h4 * a4[i][j];
            if (i == j) mij += 1.0;
            tm.m[j * kernel_rows + i] = mij;
        }
        double di = h * c[i];
        for (int j = 0; j < 9; ++j)
            di += (h2 * a[i][j] + h3 * a2[i][j] + h4 * a3[i][j]) * c[j];
        tm.d[i] = di;
    }
    return tm;
}

trajectory integrate(const closed_loop_matrix& cl, const load_case& lc,
                     const sim_config& cfg) {
    validate(cfg);
    validate(lc);
    const transition_map tm = build_transition_map(cl, lc.w1, lc.w2, cfg.dt);
    const step_fn step = active_kernel();
    const int n = step_count(cfg);

    trajectory traj;
    traj.lc = lc;
    traj.times.reserve(static_cast<std::size_t>(n / cfg.record_stride) + 1);
    traj.states.reserve(traj.times.capacity());
    traj.times.push_back(0.0);
    traj.states.push_back(state_vector{});

    alignas(32) double x[kernel_rows] = {};
    alignas(32) double y[kernel_rows] = {};
    for (int k = 1; k <= n; ++k) {
        step(tm.m.data(), tm.d.data(), x, y);
        std::copy(y, y + kernel_rows, x);
        double mag = 0.0;
        for (int r = 0; r < 9; ++r) mag = std::max(mag, std::abs(x[r]));
        const double t = k * cfg.dt;
        if (mag > divergence_limit) throw divergence_error(t, mag);
        if (k % cfg.record_stride == 0) {
            traj.times.push_back(t);
            state_vector s;
            std::copy(x, x + 9, s.begin());
            traj.states.push_back(s);
        }
    }
    return traj;
}

double itae(const trajectory& traj) {
    if (traj.times.empty())
        throw config_error("itae requires a non-empty trajectory");
    double acc = 0.0;
    auto integrand = [&](std::size_t k) {
        const state_vector& s = traj.states[k];
        return traj.times[k] *
               (std::abs(s[0]) + std::abs(s[3]) + std::abs(s[6]));
    };
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double dt = traj.times[k] - traj.times[k - 1];
        acc += 0.5 * dt * (integrand(k - 1) + integrand(k));
    }
    return acc;
}

double evaluate(const plant_params& p, const pid_gains& g,
                const load_case& lc, const sim_config& cfg) {
    validate(cfg);
    validate(lc);
    const closed_loop_matrix cl = build_closed_loop(p, g);
    const transition_map tm = build_transition_map(cl, lc.w1, lc.w2, cfg.dt);
    const step_fn step = active_kernel();
    const int n = step_count(cfg);

    alignas(32) double x[kernel_rows] = {};
    alignas(32) double y[kernel_rows] = {};
    double acc = 0.0;
    double g_prev = 0.0; // integrand at t = 0 (zero state)
    for (int k = 1; k <= n; ++k) {
        step(tm.m.data(), tm.d.data(), x, y);
        std::copy(y, y + kernel_rows, x);
        const double t = k * cfg.dt;
        const double g_cur =
            t * (std::abs(x[0]) + std::abs(x[3]) + std::abs(x[6]));
        acc += 0.5 * cfg.dt * (g_prev + g_cur);
        g_prev = g_cur;
        double mag = 0.0;
        for (int r = 0; r < 9; ++r) mag = std::max(mag, std::abs(x[r]));
        if (mag > divergence_limit) return 1e6 + (cfg.t_final - t);
    }
    return acc;
}

settling_report settling_metrics(const trajectory& traj,
                                 double band_fraction) {
    if (!(band_fraction > 0.0 && band_fraction < 1.0))
        throw config_error("band_fraction must lie in (0, 1)");

    auto analyze = [&](int col) {
        signal_metrics m;
        std::size_t peak_at = 0;
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const double v = std::abs(traj.states[k][col]);
            if (v > m.peak) {
                m.peak = v;
                peak_at = k;
            }
        }
        if (m.peak == 0.0) return m; // identically zero: all metrics zero
        const double main_sign =
            traj.states[peak_at][col] >= 0.0 ? 1.0 : -1.0;
        const double band = band_fraction * m.peak;
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const double v = traj.states[k][col];
            m.overshoot = std::max(m.overshoot, -main_sign * v);
            if (std::abs(v) > band) {
                const std::size_t next = k + 1;
                m.settling_time = next < traj.times.size() ? traj.times[next]
                                                           : traj.times[k];
            }
        }
        m.overshoot = std::max(m.overshoot, 0.0);
        return m;
    };

    settling_report r;
    r.x1 = analyze(0);
    r.x4 = analyze(3);
    r.x7 = analyze(6);
    return r;
}

} // namespace lfc
