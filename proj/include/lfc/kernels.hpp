#pragma once

#include <array>
#include <string>

namespace lfc {

// Hot kernel of the whole benchmark: one integrator step of the closed-loop
// system, which is the fused affine map y = M*x + d on 9 states. The matrix
// is stored column-major and padded to 12 rows so each column is exactly
// three 4-lane (AVX2) or six 2-lane (NEON) vectors; rows 9-11 of M and d are
// zero, so the padded lanes of the state stay zero through every step.
inline constexpr int kernel_rows = 12;
inline constexpr int kernel_dim = 9;

using step_fn = void (*)(const double* m /* 12x9 col-major */,
                         const double* d /* 12 */,
                         const double* x /* 12 */,
                         double* y /* 12 */);

void step_scalar(const double* m, const double* d, const double* x, double* y);
#if defined(LFC_HAVE_AVX2_TU)
void step_avx2(const double* m, const double* d, const double* x, double* y);
#endif
#if defined(LFC_HAVE_NEON_TU)
void step_neon(const double* m, const double* d, const double* x, double* y);
#endif

// Runtime dispatch: picks the widest kernel the CPU supports at first use.
// set_kernel("scalar"|"avx2"|"neon") overrides (tests, reproducibility
// pinning); returns false if the named kernel is unavailable on this build
// or CPU. kernel_name() reports the active choice (recorded in manifests).
step_fn active_kernel();
bool set_kernel(const std::string& name);
std::string kernel_name();

} // namespace lfc
