#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Two-area AGC plant: closed-loop 9-state linear model of a PID-augmented
// interconnected power system. State ordering throughout:
//   x1  area-1 frequency deviation        (Hz)
//   x2  area-1 turbine output change      (pu)
//   x3  area-1 governor valve change      (pu)
//   x4  area-2 frequency deviation        (Hz)
//   x5  area-2 turbine output change      (pu)
//   x6  area-2 governor valve change      (pu)
//   x7  tie-line power-flow deviation     (pu)
//   u1  area-1 controller output          (pu)
//   u2  area-2 controller output          (pu)

namespace lfc {

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct plant_params {
    double r1 = 3.0;     // speed-regulation constant, area 1 (Hz/pu)
    double r2 = 3.0;
    double b1 = 0.425;   // frequency-bias factor, area 1 (pu/Hz)
    double b2 = 0.425;
    double tsg1 = 0.4;   // governor time constant (s)
    double tsg2 = 0.4;
    double tt1 = 0.5;    // turbine time constant (s)
    double tt2 = 0.5;
    double tps1 = 20.0;  // generator-load time constant (s)
    double tps2 = 20.0;
    double kps1 = 100.0; // generator-load gain (Hz/pu)
    double kps2 = 100.0;
    // Tie-line synchronization coefficient; enters the dynamics as 2*pi*t12.
    // The literature value for this system family is 0.0867, but that choice
    // makes the benchmark's published gain sets unstable; 0.008 is the value
    // calibrated against the published case results (see README, "Plant
    // calibration"). Configurable via the `plant` config section.
    double t12 = 0.008;
    double a12 = 1.0;    // area-size ratio constant
};

// Throws config_error when a physical constant is non-positive/non-finite.
void validate(const plant_params& p);

struct pid_gains {
    double kp1 = 0.0;
    double ki1 = 0.0;
    double kd1 = 0.0;
    double kp2 = 0.0;
    double ki2 = 0.0;
    double kd2 = 0.0;
};

// Throws config_error on NaN/infinite gain values.
void validate(const pid_gains& g);

using state_vector = std::array<double, 9>;

// Controller-derivative coefficients: u1' = sum_j e[j]*x[j+1] over x1..x7
// plus e[7]*w1 + e[8]*w2, and likewise f for u2'. Index 0 holds e1/f1.
struct coefficient_set {
    std::array<double, 9> e{};
    std::array<double, 9> f{};
};

struct closed_loop_matrix {
    // Row-major a[i][j]: coefficient of state j in the derivative of state i.
    std::array<std::array<double, 9>, 9> a{};
    // b_w[i][k]: coefficient of disturbance w_{k+1} in the derivative of state i.
    std::array<std::array<double, 2>, 9> b_w{};
};

// Open-loop derivatives (x1'..x7') with the controller outputs held as inputs
// inside `state`; tie-line coupling enters area 2 with a positive sign.
std::array<double, 7> open_loop_derivative(const plant_params& p,
                                           const state_vector& state,
                                           double w1, double w2);

// Area control errors: ace1 = b1*x1 + x7, ace2 = b2*x4 - a12*x7.
std::pair<double, double> ace(const plant_params& p, const state_vector& state);

// First-principles coefficients for the controller-derivative rows, obtained
// by expanding u_i' = kp_i*ACE_i' + ki_i*ACE_i + kd_i*ACE_i'' with the chain
// rule through the open-loop equations. This set feeds matrix assembly.
coefficient_set analytic_coefficients(const plant_params& p, const pid_gains& g);

// The same coefficients as printed in the source material's appendix,
// transcribed verbatim. Kept as a cross-check surface only: entry e1 is
// known to disagree with the derivation (see coefficient_discrepancies).
coefficient_set appendix_c_coefficients(const plant_params& p, const pid_gains& g);

struct coefficient_discrepancy {
    std::string name;    // "e1".."e9", "f1".."f9"
    double analytic;
    double printed;
    double rel_error;    // |analytic - printed| / max(|analytic|, |printed|)
};

// Entries of the printed coefficient table that disagree with the analytic
// derivation by more than rel_tol (relative). Empty means full agreement.
std::vector<coefficient_discrepancy> coefficient_discrepancies(
    const plant_params& p, const pid_gains& g, double rel_tol = 1e-9);

// Assembles the full closed-loop system x' = A x + B_w w with rows 1-7 from
// the open-loop equations and rows 8-9 from analytic_coefficients.
closed_loop_matrix build_closed_loop(const plant_params& p, const pid_gains& g);

} // namespace lfc
