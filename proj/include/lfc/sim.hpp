#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "lfc/kernels.hpp"
#include "lfc/model.hpp"

namespace lfc {

struct sim_config {
    double dt = 0.01;
    // Horizon chosen together with the plant's t12 calibration: the replayed
    // responses still carry ITAE mass past t=20 at the calibrated tie-line
    // coupling, while 40 -> 80 changes ITAE by < 0.1% for every benchmark
    // case. See README, "Plant calibration".
    double t_final = 40.0;
    int record_stride = 1;
};

void validate(const sim_config& cfg);

struct load_case {
    int id = 0;
    double w1 = 0.0; // step load perturbation, area 1 (pu)
    double w2 = 0.0; // step load perturbation, area 2 (pu)
};

void validate(const load_case& lc);

// The five benchmark disturbance cases.
std::array<load_case, 5> case_catalog();
load_case case_by_id(int id);

// Box constraints on the decision vector; defaults are the benchmark's
// six controller-gain bounds, ordered (kp1, ki1, kd1, kp2, ki2, kd2).
// Kept n-dimensional so test objectives (sphere) use the same machinery.
struct search_space {
    std::vector<double> lower{-16.0, -45.0, -8.0, -16.0, -45.0, -8.0};
    std::vector<double> upper{-6.0, -15.0, -3.0, -6.0, -15.0, -3.0};
};

void validate(const search_space& space);
std::vector<double> clamp_to_bounds(std::vector<double> v,
                                    const search_space& space);

pid_gains gains_from_vector(const std::vector<double>& v);
std::vector<double> gains_to_vector(const pid_gains& g);

struct trajectory {
    std::vector<double> times;
    std::vector<state_vector> states;
    load_case lc;
};

class divergence_error : public std::runtime_error {
  public:
    divergence_error(double t, double magnitude);
    double t_divergence;
    double magnitude;
};

// Fused one-step representation of classical RK4 on the linear closed loop
// x' = A x + B_w w with constant w: x_{k+1} = M x_k + d where
//   M = I + hA + h^2 A^2/2 + h^3 A^3/6 + h^4 A^4/24
//   d = (hI + h^2 A/2 + h^3 A^2/6 + h^4 A^3/24) (B_w w)
// This is algebraically identical to the four-stage form (pinned by tests);
// the padded layout feeds the SIMD step kernels directly.
struct transition_map {
    std::array<double, kernel_rows * kernel_dim> m{}; // column-major, padded
    std::array<double, kernel_rows> d{};
};

transition_map build_transition_map(const closed_loop_matrix& cl,
                                    double w1, double w2, double dt);

// Integrates from the zero state; records every record_stride-th sample
// (t = 0 included). Throws divergence_error when any |state| exceeds 1e6.
trajectory integrate(const closed_loop_matrix& cl, const load_case& lc,
                     const sim_config& cfg);

// Trapezoidal integral of t * (|x1| + |x4| + |x7|) over recorded samples.
double itae(const trajectory& traj);

// closed_loop_matrix -> integrate -> itae at full resolution, without
// storing the trajectory. A divergent loop yields the penalty fitness
// 1e6 + (t_final - t_divergence) instead of an exception so optimizers
// steer away smoothly.
double evaluate(const plant_params& p, const pid_gains& g,
                const load_case& lc, const sim_config& cfg);

struct signal_metrics {
    double peak = 0.0;          // max |signal|
    double overshoot = 0.0;     // largest excursion opposite the main peak
    double settling_time = 0.0; // last time |signal| exits the peak band
};

struct settling_report {
    signal_metrics x1, x4, x7;
};

// band_fraction in (0, 1); identically-zero signals report all-zero metrics.
settling_report settling_metrics(const trajectory& traj,
                                 double band_fraction = 0.02);

} // namespace lfc
