#include "lfc/kernels.hpp"

namespace lfc {

void step_scalar(const double* m, const double* d, const double* x, double* y) {
    double acc[kernel_dim];
    for (int r = 0; r < kernel_dim; ++r) acc[r] = d[r];
    for (int j = 0; j < kernel_dim; ++j) {
        const double xj = x[j];
        const double* col = m + j * kernel_rows;
        for (int r = 0; r < kernel_dim; ++r) acc[r] += col[r] * xj;
    }
    for (int r = 0; r < kernel_dim; ++r) y[r] = acc[r];
    for (int r = kernel_dim; r < kernel_rows; ++r) y[r] = 0.0;
}

namespace {

struct kernel_entry {
    const char* name;
    step_fn fn;
};

const kernel_entry table[] = {
    {"scalar", &step_scalar},
#if defined(LFC_HAVE_AVX2_TU)
    {"avx2", &step_avx2},
#endif
#if defined(LFC_HAVE_NEON_TU)
    {"neon", &step_neon},
#endif
};

step_fn pick_default(const char** name_out) {
#if defined(LFC_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        *name_out = "avx2";
        return &step_avx2;
    }
#endif
#if defined(LFC_HAVE_NEON_TU)
    *name_out = "neon";
    return &step_neon;
#endif
    *name_out = "scalar";
    return &step_scalar;
}

step_fn g_active = nullptr;
const char* g_name = "scalar";

void ensure_initialized() {
    if (!g_active) g_active = pick_default(&g_name);
}

} // namespace

step_fn active_kernel() {
    ensure_initialized();
    return g_active;
}

bool set_kernel(const std::string& name) {
    for (const auto& entry : table) {
        if (name == entry.name) {
#if defined(LFC_HAVE_AVX2_TU)
            if (name == "avx2" && !(__builtin_cpu_supports("avx2") &&
                                    __builtin_cpu_supports("fma")))
                return false;
#endif
            g_active = entry.fn;
            g_name = entry.name;
            return true;
        }
    }
    return false;
}

std::string kernel_name() {
    ensure_initialized();
    return g_name;
}

} // namespace lfc
