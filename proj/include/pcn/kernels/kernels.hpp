#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Data-parallel inner loops used by the simplex tableau and the array-based
// searchers. Every backend computes the exact same IEEE operation sequence
// per element (no fma, no reassociation), so results are bit-identical no
// matter which variant the dispatcher picks. That keeps seeded runs
// reproducible across machines with different vector units.
namespace pcn::kernels {

enum class Backend { Scalar, Avx2, Neon };

const char* backend_name(Backend b);

// Backends compiled in and usable on this CPU. Scalar is always present.
std::vector<Backend> available_backends();

// Active backend. Defaults to the widest available one; the PCN_KERNELS
// environment variable (scalar|avx2|neon) overrides the default.
Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unavailable

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// x[i] *= a
void scale(double a, double* x, std::size_t n);

// x[i] = clamp01(x[i] + v[i]), where clamp01(t) = min(max(t, 0), 1)
void add_clamp01(const double* v, double* x, std::size_t n);

// v[i] = w*v[i] + c1*r1[i]*(pb[i]-x[i]) + c2*r2[i]*(gb[i]-x[i])
void pso_velocity(double w, double c1, double c2, const double* r1, const double* r2,
                  const double* pb, const double* gb, const double* x, double* v,
                  std::size_t n);

// Per-backend entry points; exposed so equivalence tests can pin a variant
// without touching the global dispatch state.
struct Ops {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  void (*add_clamp01)(const double*, double*, std::size_t);
  void (*pso_velocity)(double, double, double, const double*, const double*, const double*,
                       const double*, const double*, double*, std::size_t);
};
const Ops& ops_for(Backend b);  // throws if unavailable

}  // namespace pcn::kernels
