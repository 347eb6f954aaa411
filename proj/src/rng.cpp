#include "lfc/rng.hpp"

#include <cmath>
#include <numbers>

namespace lfc {

double mt_stream::rand() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double mt_stream::randn() {
    const double u1 = rand();
    const double u2 = rand();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

int mt_stream::uniform_int(int lo, int hi) {
    const int span = hi - lo + 1;
    const int k = static_cast<int>(rand() * span);
    return lo + (k >= span ? span - 1 : k);
}

} // namespace lfc
