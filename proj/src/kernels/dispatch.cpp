#include "pcn/kernels/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pcn::kernels {

namespace detail {
void scalar_axpy(double, const double*, double*, std::size_t);
void scalar_scale(double, double*, std::size_t);
void scalar_add_clamp01(const double*, double*, std::size_t);
void scalar_pso_velocity(double, double, double, const double*, const double*, const double*,
                         const double*, const double*, double*, std::size_t);
#ifdef PCN_KERNELS_AVX2
void avx2_axpy(double, const double*, double*, std::size_t);
void avx2_scale(double, double*, std::size_t);
void avx2_add_clamp01(const double*, double*, std::size_t);
void avx2_pso_velocity(double, double, double, const double*, const double*, const double*,
                       const double*, const double*, double*, std::size_t);
#endif
#ifdef PCN_KERNELS_NEON
void neon_axpy(double, const double*, double*, std::size_t);
void neon_scale(double, double*, std::size_t);
void neon_add_clamp01(const double*, double*, std::size_t);
void neon_pso_velocity(double, double, double, const double*, const double*, const double*,
                       const double*, const double*, double*, std::size_t);
#endif
}  // namespace detail

namespace {

constexpr Ops kScalarOps{detail::scalar_axpy, detail::scalar_scale, detail::scalar_add_clamp01,
                         detail::scalar_pso_velocity};
#ifdef PCN_KERNELS_AVX2
constexpr Ops kAvx2Ops{detail::avx2_axpy, detail::avx2_scale, detail::avx2_add_clamp01,
                       detail::avx2_pso_velocity};
#endif
#ifdef PCN_KERNELS_NEON
constexpr Ops kNeonOps{detail::neon_axpy, detail::neon_scale, detail::neon_add_clamp01,
                       detail::neon_pso_velocity};
#endif

bool backend_usable(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#ifdef PCN_KERNELS_AVX2
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::Neon:
#ifdef PCN_KERNELS_NEON
      return true;  // NEON is baseline on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend default_backend() {
  if (const char* env = std::getenv("PCN_KERNELS")) {
    const std::string want(env);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (want == backend_name(b)) {
        if (!backend_usable(b)) {
          throw std::runtime_error("PCN_KERNELS requests unavailable backend: " + want);
        }
        return b;
      }
    }
    throw std::runtime_error("PCN_KERNELS must be scalar, avx2 or neon; got: " + want);
  }
#ifdef PCN_KERNELS_AVX2
  if (backend_usable(Backend::Avx2)) return Backend::Avx2;
#endif
#ifdef PCN_KERNELS_NEON
  if (backend_usable(Backend::Neon)) return Backend::Neon;
#endif
  return Backend::Scalar;
}

Backend& current_backend() {
  static Backend b = default_backend();
  return b;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "?";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (backend_usable(b)) out.push_back(b);
  }
  return out;
}

Backend active_backend() { return current_backend(); }

void set_backend(Backend b) {
  if (!backend_usable(b)) {
    throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
  }
  current_backend() = b;
}

const Ops& ops_for(Backend b) {
  if (!backend_usable(b)) {
    throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
  }
  switch (b) {
    case Backend::Scalar:
      return kScalarOps;
#ifdef PCN_KERNELS_AVX2
    case Backend::Avx2:
      return kAvx2Ops;
#endif
#ifdef PCN_KERNELS_NEON
    case Backend::Neon:
      return kNeonOps;
#endif
    default:
      return kScalarOps;  // unreachable: backend_usable already filtered
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  ops_for(current_backend()).axpy(a, x, y, n);
}

void scale(double a, double* x, std::size_t n) { ops_for(current_backend()).scale(a, x, n); }

void add_clamp01(const double* v, double* x, std::size_t n) {
  ops_for(current_backend()).add_clamp01(v, x, n);
}

void pso_velocity(double w, double c1, double c2, const double* r1, const double* r2,
                  const double* pb, const double* gb, const double* x, double* v,
                  std::size_t n) {
  ops_for(current_backend()).pso_velocity(w, c1, c2, r1, r2, pb, gb, x, v, n);
}

}  // namespace pcn::kernels
