#include "pcn/kernels/kernels.hpp"

#ifdef PCN_KERNELS_AVX2
#include <immintrin.h>

// AVX2 variants. mul+add is used instead of fmadd on purpose: fma would round
// once where the scalar path rounds twice, and the backends must agree bit
// for bit.
namespace pcn::kernels::detail {

void avx2_axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void avx2_scale(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
  }
  for (; i < n; ++i) x[i] = x[i] * a;
}

void avx2_add_clamp01(const double* v, double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(v + i));
    t = _mm256_min_pd(_mm256_max_pd(t, zero), one);
    _mm256_storeu_pd(x + i, t);
  }
  for (; i < n; ++i) {
    double t = x[i] + v[i];
    t = t > 0.0 ? t : 0.0;
    t = t < 1.0 ? t : 1.0;
    x[i] = t;
  }
}

void avx2_pso_velocity(double w, double c1, double c2, const double* r1, const double* r2,
                       const double* pb, const double* gb, const double* x, double* v,
                       std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d vc1 = _mm256_set1_pd(c1);
  const __m256d vc2 = _mm256_set1_pd(c2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d cog =
        _mm256_mul_pd(_mm256_mul_pd(vc1, _mm256_loadu_pd(r1 + i)),
                      _mm256_sub_pd(_mm256_loadu_pd(pb + i), vx));
    const __m256d soc =
        _mm256_mul_pd(_mm256_mul_pd(vc2, _mm256_loadu_pd(r2 + i)),
                      _mm256_sub_pd(_mm256_loadu_pd(gb + i), vx));
    _mm256_storeu_pd(v + i, _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(vw, vv), cog), soc));
  }
  for (; i < n; ++i) {
    v[i] = w * v[i] + (c1 * r1[i]) * (pb[i] - x[i]) + (c2 * r2[i]) * (gb[i] - x[i]);
  }
}

}  // namespace pcn::kernels::detail
#endif  // PCN_KERNELS_AVX2
