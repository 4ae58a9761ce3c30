#include "pcn/kernels/kernels.hpp"

// Reference implementations. The ternary clamp mirrors the SIMD max/min
// semantics exactly (including -0.0 -> +0.0), which the equivalence tests
// rely on.
namespace pcn::kernels::detail {

void scalar_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scalar_scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * a;
}

void scalar_add_clamp01(const double* v, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double t = x[i] + v[i];
    t = t > 0.0 ? t : 0.0;
    t = t < 1.0 ? t : 1.0;
    x[i] = t;
  }
}

void scalar_pso_velocity(double w, double c1, double c2, const double* r1, const double* r2,
                         const double* pb, const double* gb, const double* x, double* v,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = w * v[i] + (c1 * r1[i]) * (pb[i] - x[i]) + (c2 * r2[i]) * (gb[i] - x[i]);
  }
}

}  // namespace pcn::kernels::detail
