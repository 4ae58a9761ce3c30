#include "pcn/kernels/kernels.hpp"

#ifdef PCN_KERNELS_NEON
#include <arm_neon.h>

namespace pcn::kernels::detail {

void neon_axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vaddq_f64(vy, vmulq_f64(va, vld1q_f64(x + i)));
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void neon_scale(double a, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), va));
  for (; i < n; ++i) x[i] = x[i] * a;
}

void neon_add_clamp01(const double* v, double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vaddq_f64(vld1q_f64(x + i), vld1q_f64(v + i));
    t = vminq_f64(vmaxq_f64(t, zero), one);
    vst1q_f64(x + i, t);
  }
  for (; i < n; ++i) {
    double t = x[i] + v[i];
    t = t > 0.0 ? t : 0.0;
    t = t < 1.0 ? t : 1.0;
    x[i] = t;
  }
}

void neon_pso_velocity(double w, double c1, double c2, const double* r1, const double* r2,
                       const double* pb, const double* gb, const double* x, double* v,
                       std::size_t n) {
  const float64x2_t vw = vdupq_n_f64(w);
  const float64x2_t vc1 = vdupq_n_f64(c1);
  const float64x2_t vc2 = vdupq_n_f64(c2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vv = vld1q_f64(v + i);
    const float64x2_t cog =
        vmulq_f64(vmulq_f64(vc1, vld1q_f64(r1 + i)), vsubq_f64(vld1q_f64(pb + i), vx));
    const float64x2_t soc =
        vmulq_f64(vmulq_f64(vc2, vld1q_f64(r2 + i)), vsubq_f64(vld1q_f64(gb + i), vx));
    vst1q_f64(v + i, vaddq_f64(vaddq_f64(vmulq_f64(vw, vv), cog), soc));
  }
  for (; i < n; ++i) {
    v[i] = w * v[i] + (c1 * r1[i]) * (pb[i] - x[i]) + (c2 * r2[i]) * (gb[i] - x[i]);
  }
}

}  // namespace pcn::kernels::detail
#endif  // PCN_KERNELS_NEON
