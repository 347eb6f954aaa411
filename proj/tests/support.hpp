#pragma once

#include "lfc/model.hpp"
#include "lfc/optimizers.hpp"
#include "lfc/rng.hpp"

#include <stdexcept>
#include <vector>

namespace test_support {

// Replays the published best case-1 gain row used as the standard stable
// reference point throughout the suite (kp1, ki1, kd1, kp2, ki2, kd2).
inline lfc::pid_gains reference_gains() {
    lfc::pid_gains g;
    g.kp1 = -15.1838;
    g.ki1 = -43.5993;
    g.kd1 = -5.7641;
    g.kp2 = -15.1738;
    g.ki2 = -45.0;
    g.kd2 = -5.761;
    return g;
}

// Deterministic stream that replays pre-chosen draws, so each optimizer
// operator can be checked against a hand computation. Throws when a test
// script runs dry or an unexpected draw kind is requested.
class scripted_stream final : public lfc::rng_stream {
  public:
    std::vector<double> rands;
    std::vector<int> ints;
    std::vector<double> randns;

    double rand() override {
        if (ri_ >= rands.size())
            throw std::runtime_error("scripted_stream: rand() exhausted");
        return rands[ri_++];
    }
    double randn() override {
        if (ni_ >= randns.size())
            throw std::runtime_error("scripted_stream: randn() exhausted");
        return randns[ni_++];
    }
    int uniform_int(int lo, int hi) override {
        if (ii_ >= ints.size())
            throw std::runtime_error("scripted_stream: uniform_int() exhausted");
        const int v = ints[ii_++];
        if (v < lo || v > hi)
            throw std::runtime_error("scripted_stream: scripted int out of range");
        return v;
    }
    bool exhausted() const {
        return ri_ == rands.size() && ni_ == randns.size() && ii_ == ints.size();
    }

  private:
    std::size_t ri_ = 0;
    std::size_t ni_ = 0;
    std::size_t ii_ = 0;
};

inline lfc::objective_spec sphere_objective(int dim, double lo, double hi) {
    lfc::objective_spec obj;
    obj.dimension = dim;
    obj.space.lower.assign(dim, lo);
    obj.space.upper.assign(dim, hi);
    obj.eval = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s;
    };
    return obj;
}

} // namespace test_support
