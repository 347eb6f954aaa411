#include "lfc/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace lfc {

void step_neon(const double* m, const double* d, const double* x, double* y) {
    float64x2_t acc0 = vld1q_f64(d + 0);
    float64x2_t acc1 = vld1q_f64(d + 2);
    float64x2_t acc2 = vld1q_f64(d + 4);
    float64x2_t acc3 = vld1q_f64(d + 6);
    float64x2_t acc4 = vld1q_f64(d + 8);
    float64x2_t acc5 = vld1q_f64(d + 10);
    for (int j = 0; j < kernel_dim; ++j) {
        const float64x2_t xj = vdupq_n_f64(x[j]);
        const double* col = m + j * kernel_rows;
        acc0 = vfmaq_f64(acc0, vld1q_f64(col + 0), xj);
        acc1 = vfmaq_f64(acc1, vld1q_f64(col + 2), xj);
        acc2 = vfmaq_f64(acc2, vld1q_f64(col + 4), xj);
        acc3 = vfmaq_f64(acc3, vld1q_f64(col + 6), xj);
        acc4 = vfmaq_f64(acc4, vld1q_f64(col + 8), xj);
        acc5 = vfmaq_f64(acc5, vld1q_f64(col + 10), xj);
    }
    vst1q_f64(y + 0, acc0);
    vst1q_f64(y + 2, acc1);
    vst1q_f64(y + 4, acc2);
    vst1q_f64(y + 6, acc3);
    vst1q_f64(y + 8, acc4);
    vst1q_f64(y + 10, acc5);
}

} // namespace lfc
#endif
