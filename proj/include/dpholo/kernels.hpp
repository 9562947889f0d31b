#pragma once

#include <cstddef>

#include "dpholo/grid.hpp"

// Data-parallel inner loops used by the rendering, filtering and retrieval
// paths. Every kernel has a scalar reference implementation and an AVX2
// variant; the dispatched entry points select one at runtime (override with
// the DPHOLO_SIMD environment variable: scalar | avx2 | auto).

namespace dpholo::kernels {

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
/// Forces a backend. Throws if the requested backend is not supported on
/// this CPU.
void set_backend(Backend b);

// y[i] += a * x[i]
void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n);
// y[i] *= s
void scale(Cplx* y, double s, std::size_t n);
void fill(Cplx* y, Cplx v, std::size_t n);
// acc[i] += |z[i]|^2
void accum_abs2(double* acc, const Cplx* z, std::size_t n);
double sum_abs2(const Cplx* z, std::size_t n);
// sum_i |c1 f1[i] + c2 f2[i] + c3 f3[i] + c4 f4[i]|^2
double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n);
// two-field variant of the above
double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n);
// o[i] = ((i0[i] - i2[i]) + i*(i3[i] - i1[i])) / 4
void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
// wraps every element to (-pi, pi]; inputs must be finite
void wrap_inplace(double* p, std::size_t n);

namespace scalar {
void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n);
void scale(Cplx* y, double s, std::size_t n);
void fill(Cplx* y, Cplx v, std::size_t n);
void accum_abs2(double* acc, const Cplx* z, std::size_t n);
double sum_abs2(const Cplx* z, std::size_t n);
double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n);
double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n);
void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void wrap_inplace(double* p, std::size_t n);
}  // namespace scalar

// Compiled with AVX2+FMA codegen in a dedicated translation unit. Call only
// when avx2_supported() is true.
namespace avx2 {
void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n);
void scale(Cplx* y, double s, std::size_t n);
void fill(Cplx* y, Cplx v, std::size_t n);
void accum_abs2(double* acc, const Cplx* z, std::size_t n);
double sum_abs2(const Cplx* z, std::size_t n);
double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n);
double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n);
void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void wrap_inplace(double* p, std::size_t n);
}  // namespace avx2

}  // namespace dpholo::kernels
