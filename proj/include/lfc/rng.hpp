#pragma once

#include <cstdint>
#include <random>

namespace lfc {

// Deterministic random stream used by every optimizer. The mapping from raw
// engine words to doubles is fixed here rather than delegated to
// std::uniform_real_distribution so that a given seed produces the same draw
// sequence on every platform/standard library:
//   rand():        (mt19937_64() >> 11) * 2^-53, uniform on [0, 1)
//   randn():       Box-Muller sqrt(-2 ln(1-u1)) * cos(2 pi u2), no caching
//   uniform_int(): lo + floor(rand() * span), clamped to hi
// The interface is virtual so tests can substitute scripted streams and
// verify the exact draw-order contract of each operator.
class rng_stream {
  public:
    virtual ~rng_stream() = default;
    virtual double rand() = 0;
    virtual double randn() = 0;
    virtual int uniform_int(int lo, int hi) = 0;
};

class mt_stream final : public rng_stream {
  public:
    explicit mt_stream(std::uint64_t seed) : gen_(seed) {}
    double rand() override;
    double randn() override;
    int uniform_int(int lo, int hi) override;

  private:
    std::mt19937_64 gen_;
};

} // namespace lfc
