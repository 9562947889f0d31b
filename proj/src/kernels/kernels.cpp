#include "dpholo/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace dpholo::kernels {

namespace scalar {

void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = Cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

void scale(Cplx* y, double s, std::size_t n) {
    double* d = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < 2 * n; ++i) d[i] *= s;
}

void fill(Cplx* y, Cplx v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = v;
}

void accum_abs2(double* acc, const Cplx* z, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        acc[i] += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
}

double sum_abs2(const Cplx* z, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
    return s;
}

double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = c1.real() * f1[i].real() - c1.imag() * f1[i].imag() +
                          c2.real() * f2[i].real() - c2.imag() * f2[i].imag() +
                          c3.real() * f3[i].real() - c3.imag() * f3[i].imag() +
                          c4.real() * f4[i].real() - c4.imag() * f4[i].imag();
        const double im = c1.real() * f1[i].imag() + c1.imag() * f1[i].real() +
                          c2.real() * f2[i].imag() + c2.imag() * f2[i].real() +
                          c3.real() * f3[i].imag() + c3.imag() * f3[i].real() +
                          c4.real() * f4[i].imag() + c4.imag() * f4[i].real();
        s += re * re + im * im;
    }
    return s;
}

double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = c1.real() * f1[i].real() - c1.imag() * f1[i].imag() +
                          c2.real() * f2[i].real() - c2.imag() * f2[i].imag();
        const double im = c1.real() * f1[i].imag() + c1.imag() * f1[i].real() +
                          c2.real() * f2[i].imag() + c2.imag() * f2[i].real();
        s += re * re + im * im;
    }
    return s;
}

void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        o[i] = Cplx((i0[i] - i2[i]) * 0.25, (i3[i] - i1[i]) * 0.25);
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void wrap_inplace(double* p, std::size_t n) {
    constexpr double inv_two_pi = 1.0 / kTwoPi;
    for (std::size_t i = 0; i < n; ++i) {
        const double k = std::nearbyint(p[i] * inv_two_pi);
        double y = p[i] - k * kTwoPi;
        if (y > kPi) y -= kTwoPi;
        if (y <= -kPi) y += kTwoPi;
        p[i] = y;
    }
}

}  // namespace scalar

namespace {

struct Table {
    void (*axpy)(Cplx*, Cplx, const Cplx*, std::size_t);
    void (*scale)(Cplx*, double, std::size_t);
    void (*fill)(Cplx*, Cplx, std::size_t);
    void (*accum_abs2)(double*, const Cplx*, std::size_t);
    double (*sum_abs2)(const Cplx*, std::size_t);
    double (*combine4_abs2_sum)(const Cplx*, const Cplx*, const Cplx*, const Cplx*, Cplx, Cplx,
                                Cplx, Cplx, std::size_t);
    double (*combine2_abs2_sum)(const Cplx*, const Cplx*, Cplx, Cplx, std::size_t);
    void (*four_step)(Cplx*, const double*, const double*, const double*, const double*,
                      std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    void (*wrap_inplace)(double*, std::size_t);
};

constexpr Table kScalarTable = {
    scalar::axpy,     scalar::scale,
    scalar::fill,     scalar::accum_abs2,
    scalar::sum_abs2, scalar::combine4_abs2_sum,
    scalar::combine2_abs2_sum, scalar::four_step,
    scalar::dot,      scalar::wrap_inplace,
};

constexpr Table kAvx2Table = {
    avx2::axpy,     avx2::scale,
    avx2::fill,     avx2::accum_abs2,
    avx2::sum_abs2, avx2::combine4_abs2_sum,
    avx2::combine2_abs2_sum, avx2::four_step,
    avx2::dot,      avx2::wrap_inplace,
};

std::atomic<const Table*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

Backend pick_default() {
    if (const char* env = std::getenv("DPHOLO_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2") {
            if (!avx2_supported())
                throw std::runtime_error("DPHOLO_SIMD=avx2 requested but CPU lacks AVX2");
            return Backend::avx2;
        }
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

const Table& table() {
    const Table* t = g_table.load(std::memory_order_acquire);
    if (!t) {
        set_backend(pick_default());
        t = g_table.load(std::memory_order_acquire);
    }
    return *t;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() {
    table();
    return g_backend.load(std::memory_order_acquire);
}

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        throw std::invalid_argument("set_backend: AVX2 not supported on this CPU");
    g_backend.store(b, std::memory_order_release);
    g_table.store(b == Backend::avx2 ? &kAvx2Table : &kScalarTable, std::memory_order_release);
}

void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n) { table().axpy(y, a, x, n); }
void scale(Cplx* y, double s, std::size_t n) { table().scale(y, s, n); }
void fill(Cplx* y, Cplx v, std::size_t n) { table().fill(y, v, n); }
void accum_abs2(double* acc, const Cplx* z, std::size_t n) { table().accum_abs2(acc, z, n); }
double sum_abs2(const Cplx* z, std::size_t n) { return table().sum_abs2(z, n); }

double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n) {
    return table().combine4_abs2_sum(f1, f2, f3, f4, c1, c2, c3, c4, n);
}

double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n) {
    return table().combine2_abs2_sum(f1, f2, c1, c2, n);
}

void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n) {
    table().four_step(o, i0, i1, i2, i3, n);
}

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
void wrap_inplace(double* p, std::size_t n) { table().wrap_inplace(p, n); }

}  // namespace dpholo::kernels
