#include <doctest.h>

#include "lfc/rng.hpp"
#include "support.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

using doctest::Approx;
using namespace lfc;

TEST_CASE("rand replays the frozen golden sequence for seed 42") {
    mt_stream s(42);
    const std::array<double, 8> golden{
        0.75515553295453897,  0.63903139385469743, 0.7521452007480266,
        0.13627268363243705,  0.90326896642837828, 0.094068311762837031,
        0.57457030410826393,  0.37288769945618483};
    for (double want : golden) CHECK(s.rand() == want);
}

TEST_CASE("rand maps raw engine words with the documented shift") {
    // Independent replay of the word-to-double rule against the raw engine.
    std::mt19937_64 raw(42);
    const std::array<std::uint64_t, 4> words{
        13930160852258120406ull, 11788048577503494824ull,
        13874630024467741450ull, 2513787319205155662ull};
    for (std::uint64_t w : words) CHECK(raw() == w);

    mt_stream s(42);
    std::mt19937_64 mirror(42);
    for (int i = 0; i < 64; ++i) {
        const double want = static_cast<double>(mirror() >> 11) *
                            0x1.0p-53; // 2^-53
        CHECK(s.rand() == want);
    }
}

TEST_CASE("randn replays the frozen Box-Muller sequence for seed 42") {
    mt_stream s(42);
    CHECK(s.randn() == Approx(-1.0771745442782885).epsilon(1e-15));
    CHECK(s.randn() == Approx(1.0945198485006107).epsilon(1e-15));
    CHECK(s.randn() == Approx(1.7947316657951717).epsilon(1e-15));
    CHECK(s.randn() == Approx(-0.91212515564414098).epsilon(1e-15));
}

TEST_CASE("randn consumes exactly two uniforms and never caches") {
    // After n randn() draws the stream must sit 2n words into the sequence.
    mt_stream a(42);
    a.randn();
    a.randn();
    a.randn();
    mt_stream b(42);
    for (int i = 0; i < 6; ++i) b.rand();
    CHECK(a.rand() == b.rand());
}

TEST_CASE("uniform_int replays the frozen sequences for seed 42") {
    mt_stream s(42);
    const std::array<int, 8> golden{7, 6, 7, 1, 9, 0, 5, 3};
    for (int want : golden) CHECK(s.uniform_int(0, 9) == want);

    mt_stream t(42);
    const std::array<int, 8> narrow{5, 4, 5, 3, 5, 3, 4, 4};
    for (int want : narrow) CHECK(t.uniform_int(3, 5) == want);
}

TEST_CASE("uniform_int stays inside its bounds and covers them") {
    mt_stream s(123);
    std::array<int, 5> seen{};
    for (int i = 0; i < 2000; ++i) {
        const int v = s.uniform_int(2, 6);
        REQUIRE(v >= 2);
        REQUIRE(v <= 6);
        ++seen[v - 2];
    }
    for (int count : seen) CHECK(count > 0);

    for (int i = 0; i < 50; ++i) CHECK(s.uniform_int(4, 4) == 4);
}

TEST_CASE("identical seeds replay, distinct seeds diverge") {
    mt_stream a(2024), b(2024), c(2025);
    bool all_equal = true;
    bool any_diff_c = false;
    for (int i = 0; i < 256; ++i) {
        const double va = a.rand();
        all_equal = all_equal && va == b.rand();
        any_diff_c = any_diff_c || va != c.rand();
    }
    CHECK(all_equal);
    CHECK(any_diff_c);
}

TEST_CASE("moment sanity over a long stream") {
    mt_stream s(7);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = s.rand();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 0.005);
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);

    mt_stream g(7);
    sum = sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = g.randn();
        sum += v;
        sum2 += v * v;
    }
    const double gmean = sum / n;
    const double gvar = sum2 / n - gmean * gmean;
    CHECK(std::abs(gmean) < 0.02);
    CHECK(std::abs(gvar - 1.0) < 0.02);
}

TEST_CASE("scripted stream replays and guards its script") {
    test_support::scripted_stream s;
    s.rands = {0.25, 0.75};
    s.randns = {-1.5};
    s.ints = {3, 0};

    CHECK(s.rand() == 0.25);
    CHECK(s.randn() == -1.5);
    CHECK(s.uniform_int(0, 9) == 3);
    CHECK(s.uniform_int(0, 0) == 0);
    CHECK(s.rand() == 0.75);
    CHECK(s.exhausted());

    CHECK_THROWS_AS(s.rand(), std::runtime_error);
    CHECK_THROWS_AS(s.randn(), std::runtime_error);
    CHECK_THROWS_AS(s.uniform_int(0, 1), std::runtime_error);

    test_support::scripted_stream t;
    t.ints = {5};
    CHECK_THROWS_AS(t.uniform_int(0, 3), std::runtime_error); // out of range
}
