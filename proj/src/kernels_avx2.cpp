#include "lfc/kernels.hpp"

#include <immintrin.h>

namespace lfc {

// Each padded column of M is three 256-bit lanes; the step accumulates
// acc += col * broadcast(x[j]) with FMA. Results differ from the scalar
// kernel only by FMA rounding (no intermediate round-off), which the
// equivalence tests bound at ~1e-14 relative.
void step_avx2(const double* m, const double* d, const double* x, double* y) {
    __m256d acc0 = _mm256_loadu_pd(d + 0);
    __m256d acc1 = _mm256_loadu_pd(d + 4);
    __m256d acc2 = _mm256_loadu_pd(d + 8);
    for (int j = 0; j < kernel_dim; ++j) {
        const __m256d xj = _mm256_set1_pd(x[j]);
        const double* col = m + j * kernel_rows;
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(col + 0), xj, acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(col + 4), xj, acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(col + 8), xj, acc2);
    }
    _mm256_storeu_pd(y + 0, acc0);
    _mm256_storeu_pd(y + 4, acc1);
    _mm256_storeu_pd(y + 8, acc2);
}

} // namespace lfc
