#include "lfc/model.hpp"

#include <cmath>
#include <numbers>

namespace lfc {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error(std::string("plant parameter ") + name +
                           " must be positive and finite");
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw config_error(std::string(name) + " must be finite");
}

// Linear functional over the extended coordinates (x1..x7, w1, w2); the
// closed-loop rows and their time derivatives are all of this form, which
// lets the chain rule become plain vector arithmetic.
using functional = std::array<double, 9>;

functional operator*(double s, const functional& v) {
    functional r{};
    for (int j = 0; j < 9; ++j) r[j] = s * v[j];
    return r;
}

functional operator+(const functional& a, const functional& b) {
    functional r{};
    for (int j = 0; j < 9; ++j) r[j] = a[j] + b[j];
    return r;
}

functional operator-(const functional& a, const functional& b) {
    functional r{};
    for (int j = 0; j < 9; ++j) r[j] = a[j] - b[j];
    return r;
}

struct open_loop_rows {
    // row[i] is the functional giving x_{i+1}' for i = 0..6. Controller
    // outputs u1/u2 do not appear: rows 3 and 6 carry them separately as
    // 1/tsg terms, handled at assembly time (they vanish under d/dt except
    // through u', which is exactly what rows 8-9 provide).
    std::array<functional, 7> row{};
};

open_loop_rows make_rows(const plant_params& p) {
    open_loop_rows r;
    // x1' = kps1/tps1 * (x2 - x7 - w1) - x1/tps1
    r.row[0][0] = -1.0 / p.tps1;
    r.row[0][1] = p.kps1 / p.tps1;
    r.row[0][6] = -p.kps1 / p.tps1;
    r.row[0][7] = -p.kps1 / p.tps1;
    // x2' = (x3 - x2)/tt1
    r.row[1][1] = -1.0 / p.tt1;
    r.row[1][2] = 1.0 / p.tt1;
    // x3' = (u1 - x1/r1 - x3)/tsg1   (u1 handled at assembly)
    r.row[2][0] = -1.0 / (p.r1 * p.tsg1);
    r.row[2][2] = -1.0 / p.tsg1;
    // x4' = kps2/tps2 * (x5 + a12*x7 - w2) - x4/tps2
    r.row[3][3] = -1.0 / p.tps2;
    r.row[3][4] = p.kps2 / p.tps2;
    r.row[3][6] = p.kps2 * p.a12 / p.tps2;
    r.row[3][8] = -p.kps2 / p.tps2;
    // x5' = (x6 - x5)/tt2
    r.row[4][4] = -1.0 / p.tt2;
    r.row[4][5] = 1.0 / p.tt2;
    // x6' = (u2 - x4/r2 - x6)/tsg2   (u2 handled at assembly)
    r.row[5][3] = -1.0 / (p.r2 * p.tsg2);
    r.row[5][5] = -1.0 / p.tsg2;
    // x7' = 2*pi*t12 * (x1 - x4)
    r.row[6][0] = two_pi * p.t12;
    r.row[6][3] = -two_pi * p.t12;
    return r;
}

} // namespace

void validate(const plant_params& p) {
    require_positive(p.r1, "r1");
    require_positive(p.r2, "r2");
    require_positive(p.b1, "b1");
    require_positive(p.b2, "b2");
    require_positive(p.tsg1, "tsg1");
    require_positive(p.tsg2, "tsg2");
    require_positive(p.tt1, "tt1");
    require_positive(p.tt2, "tt2");
    require_positive(p.tps1, "tps1");
    require_positive(p.tps2, "tps2");
    require_positive(p.kps1, "kps1");
    require_positive(p.kps2, "kps2");
    require_positive(p.t12, "t12");
    require_finite(p.a12, "plant parameter a12");
    if (p.a12 == 0.0) throw config_error("plant parameter a12 must be nonzero");
}

void validate(const pid_gains& g) {
    require_finite(g.kp1, "gain kp1");
    require_finite(g.ki1, "gain ki1");
    require_finite(g.kd1, "gain kd1");
    require_finite(g.kp2, "gain kp2");
    require_finite(g.ki2, "gain ki2");
    require_finite(g.kd2, "gain kd2");
}

std::array<double, 7> open_loop_derivative(const plant_params& p,
                                           const state_vector& state,
                                           double w1, double w2) {
    const open_loop_rows r = make_rows(p);
    const std::array<double, 9> ext = {state[0], state[1], state[2],
                                       state[3], state[4], state[5],
                                       state[6], w1,       w2};
    std::array<double, 7> dx{};
    for (int i = 0; i < 7; ++i) {
        double s = 0.0;
        for (int j = 0; j < 9; ++j) s += r.row[i][j] * ext[j];
        dx[i] = s;
    }
    dx[2] += state[7] / p.tsg1; // u1 drive on the governor
    dx[5] += state[8] / p.tsg2; // u2 drive
    return dx;
}

std::pair<double, double> ace(const plant_params& p, const state_vector& state) {
    const double ace1 = p.b1 * state[0] + state[6];
    const double ace2 = p.b2 * state[3] - p.a12 * state[6];
    return {ace1, ace2};
}

coefficient_set analytic_coefficients(const plant_params& p, const pid_gains& g) {
    const open_loop_rows r = make_rows(p);
    const functional& row1 = r.row[0];
    const functional& row2 = r.row[1];
    const functional& row4 = r.row[3];
    const functional& row5 = r.row[4];
    const functional& row7 = r.row[6];

    // Second derivatives of x1, x4, x7 as functionals (step disturbances:
    // w' = 0, so the w columns of the inner rows simply propagate).
    const functional dd1 =
        (p.kps1 / p.tps1) * (row2 - row7) - (1.0 / p.tps1) * row1;
    const functional dd4 =
        (p.kps2 / p.tps2) * (row5 + p.a12 * row7) - (1.0 / p.tps2) * row4;
    const functional dd7 = (two_pi * p.t12) * (row1 - row4);

    functional d1{}, d4{}, d7{};
    d1[0] = 1.0;
    d4[3] = 1.0;
    d7[6] = 1.0;

    // u1' = kp1*ACE1' + ki1*ACE1 + kd1*ACE1''  with ACE1 = b1*x1 + x7
    const functional e = g.kp1 * (p.b1 * row1 + row7) +
                         g.ki1 * (p.b1 * d1 + d7) +
                         g.kd1 * (p.b1 * dd1 + dd7);
    // u2' mirrors with ACE2 = b2*x4 - a12*x7
    const functional f = g.kp2 * (p.b2 * row4 - p.a12 * row7) +
                         g.ki2 * (p.b2 * d4 - p.a12 * d7) +
                         g.kd2 * (p.b2 * dd4 - p.a12 * dd7);

    coefficient_set c;
    c.e = e;
    c.f = f;
    return c;
}

coefficient_set appendix_c_coefficients(const plant_params& p, const pid_gains& g) {
    const double w12 = two_pi * p.t12;
    coefficient_set c;
    auto& e = c.e;
    auto& f = c.f;

    e[0] = w12 * g.kp1 + g.ki1 * p.b1 - g.kp1 * p.b1 / p.tps1;
    e[1] = g.kp1 * p.b1 * p.kps1 / p.tps1 -
           g.kd1 * p.b1 * p.kps1 / (p.tps1 * p.tt1) -
           g.kd1 * p.b1 * p.kps1 / (p.tps1 * p.tps1) +
           g.kd1 * p.kps1 * w12 / p.tps1;
    e[2] = g.kd1 * p.b1 * p.kps1 / (p.tps1 * p.tt1);
    e[3] = -g.kp1 * w12 + g.kd1 * p.b1 * p.kps1 * w12 / p.tps1 +
           g.kd1 * w12 / p.tps2;
    e[4] = -g.kd1 * p.kps2 * w12 / p.tps2;
    e[5] = 0.0;
    e[6] = g.ki1 - g.kp1 * p.b1 * p.kps1 / p.tps1 +
           g.kd1 * p.b1 * p.kps1 / (p.tps1 * p.tps1) -
           g.kd1 * p.kps1 * w12 / p.tps1 -
           g.kd1 * p.kps2 * w12 * p.a12 / p.tps2;
    e[7] = -g.kp1 * p.b1 * p.kps1 / p.tps1 - g.kd1 * w12 * p.kps1 / p.tps1 +
           g.kd1 * p.b1 * p.kps1 / (p.tps1 * p.tps1);
    e[8] = g.kd1 * w12 * p.kps2 / p.tps2;

    f[0] = -g.kp2 * w12 * p.a12 + g.kd2 * p.b2 * p.kps2 * w12 * p.a12 / p.tps2 +
           g.kd2 * p.a12 * w12 / p.tps1;
    f[1] = -g.kd2 * p.kps1 * w12 * p.a12 / p.tps1;
    f[2] = 0.0;
    f[3] = -g.kp2 * p.b2 / p.tps2 + g.kp2 * w12 * p.a12 + g.ki2 * p.b2 -
           g.kd2 * p.b2 * p.kps2 * w12 * p.a12 / p.tps2 +
           g.kd2 * p.b2 / (p.tps2 * p.tps2) - g.kd2 * w12 * p.a12 / p.tps2;
    f[4] = g.kp2 * p.b2 * p.kps2 / p.tps2 -
           g.kd2 * p.b2 * p.kps2 / (p.tps2 * p.tt2) -
           g.kd2 * p.b2 * p.kps2 / (p.tps2 * p.tps2) +
           g.kd2 * p.kps2 * w12 * p.a12 / p.tps2;
    f[5] = g.kd2 * p.b2 * p.kps2 / (p.tps2 * p.tt2);
    f[6] = g.kp2 * p.b2 * p.kps2 * p.a12 / p.tps2 -
           g.kd2 * p.b2 * p.kps2 * p.a12 / (p.tps2 * p.tps2) +
           g.kd2 * p.kps1 * w12 * p.a12 / p.tps1 - g.ki2 * p.a12 +
           g.kd2 * p.kps2 * w12 * p.a12 * p.a12 / p.tps2;
    f[7] = g.kd2 * w12 * p.kps1 * p.a12 / p.tps1;
    f[8] = -g.kp2 * p.b2 * p.kps2 / p.tps2 -
           g.kd2 * w12 * p.kps2 * p.a12 / p.tps2 +
           g.kd2 * p.b2 * p.kps2 / (p.tps2 * p.tps2);

    return c;
}

std::vector<coefficient_discrepancy> coefficient_discrepancies(
    const plant_params& p, const pid_gains& g, double rel_tol) {
    const coefficient_set an = analytic_coefficients(p, g);
    const coefficient_set pr = appendix_c_coefficients(p, g);
    std::vector<coefficient_discrepancy> out;
    for (int j = 0; j < 18; ++j) {
        const bool is_e = j < 9;
        const double a = is_e ? an.e[j] : an.f[j - 9];
        const double b = is_e ? pr.e[j] : pr.f[j - 9];
        const double scale = std::max(std::abs(a), std::abs(b));
        const double rel = scale > 0.0 ? std::abs(a - b) / scale : 0.0;
        if (rel > rel_tol) {
            const std::string name =
                (is_e ? "e" : "f") + std::to_string(is_e ? j + 1 : j - 8);
            out.push_back({name, a, b, rel});
        }
    }
    return out;
}

closed_loop_matrix build_closed_loop(const plant_params& p, const pid_gains& g) {
    validate(p);
    validate(g);
    const open_loop_rows r = make_rows(p);
    const coefficient_set c = analytic_coefficients(p, g);

    closed_loop_matrix m;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) m.a[i][j] = r.row[i][j];
        m.b_w[i][0] = r.row[i][7];
        m.b_w[i][1] = r.row[i][8];
    }
    m.a[2][7] = 1.0 / p.tsg1;
    m.a[5][8] = 1.0 / p.tsg2;
    for (int j = 0; j < 7; ++j) {
        m.a[7][j] = c.e[j];
        m.a[8][j] = c.f[j];
    }
    m.b_w[7][0] = c.e[7];
    m.b_w[7][1] = c.e[8];
    m.b_w[8][0] = c.f[7];
    m.b_w[8][1] = c.f[8];
    return m;
}

} // namespace lfc
