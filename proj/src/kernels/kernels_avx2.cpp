// AVX2 variants of the data-parallel kernels. This translation unit is built
// with -mavx2 -mfma; the dispatcher never selects these entry points unless
// the CPU reports both features.

#include "dpholo/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace dpholo::kernels::avx2 {

namespace {

// [re im re im] -> [im re im re]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

// c * v for interleaved complex lanes, c broadcast as (cr, ci)
inline __m256d cmul(__m256d v, __m256d cr, __m256d ci) {
    return _mm256_addsub_pd(_mm256_mul_pd(v, cr), _mm256_mul_pd(swap_pairs(v), ci));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(xd + 2 * i);
        const __m256d acc = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(acc, cmul(v, ar, ai)));
    }
    if (i < n) scalar::axpy(y + i, a, x + i, n - i);
}

void scale(Cplx* y, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    double* d = reinterpret_cast<double*>(y);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), vs));
    for (; i < m; ++i) d[i] *= s;
}

void fill(Cplx* y, Cplx v, std::size_t n) {
    const __m256d vv = _mm256_setr_pd(v.real(), v.imag(), v.real(), v.imag());
    double* d = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) _mm256_storeu_pd(d + 2 * i, vv);
    if (i < n) y[i] = v;
}

void accum_abs2(double* acc, const Cplx* z, std::size_t n) {
    const double* zd = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v1 = _mm256_loadu_pd(zd + 2 * i);
        const __m256d v2 = _mm256_loadu_pd(zd + 2 * i + 4);
        // hadd interleaves the 128-bit halves: fix the lane order afterwards
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v1, v1), _mm256_mul_pd(v2, v2));
        h = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), h));
    }
    if (i < n) scalar::accum_abs2(acc + i, z + i, n - i);
}

double sum_abs2(const Cplx* z, std::size_t n) {
    const double* zd = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(zd + 2 * i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    if (i < n) s += scalar::sum_abs2(z + i, n - i);
    return s;
}

double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n) {
    const __m256d c1r = _mm256_set1_pd(c1.real()), c1i = _mm256_set1_pd(c1.imag());
    const __m256d c2r = _mm256_set1_pd(c2.real()), c2i = _mm256_set1_pd(c2.imag());
    const __m256d c3r = _mm256_set1_pd(c3.real()), c3i = _mm256_set1_pd(c3.imag());
    const __m256d c4r = _mm256_set1_pd(c4.real()), c4i = _mm256_set1_pd(c4.imag());
    const double* d1 = reinterpret_cast<const double*>(f1);
    const double* d2 = reinterpret_cast<const double*>(f2);
    const double* d3 = reinterpret_cast<const double*>(f3);
    const double* d4 = reinterpret_cast<const double*>(f4);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d s = cmul(_mm256_loadu_pd(d1 + 2 * i), c1r, c1i);
        s = _mm256_add_pd(s, cmul(_mm256_loadu_pd(d2 + 2 * i), c2r, c2i));
        s = _mm256_add_pd(s, cmul(_mm256_loadu_pd(d3 + 2 * i), c3r, c3i));
        s = _mm256_add_pd(s, cmul(_mm256_loadu_pd(d4 + 2 * i), c4r, c4i));
        acc = _mm256_fmadd_pd(s, s, acc);
    }
    double s = hsum(acc);
    if (i < n) s += scalar::combine4_abs2_sum(f1 + i, f2 + i, f3 + i, f4 + i, c1, c2, c3, c4, n - i);
    return s;
}

double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n) {
    const __m256d c1r = _mm256_set1_pd(c1.real()), c1i = _mm256_set1_pd(c1.imag());
    const __m256d c2r = _mm256_set1_pd(c2.real()), c2i = _mm256_set1_pd(c2.imag());
    const double* d1 = reinterpret_cast<const double*>(f1);
    const double* d2 = reinterpret_cast<const double*>(f2);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d s = cmul(_mm256_loadu_pd(d1 + 2 * i), c1r, c1i);
        s = _mm256_add_pd(s, cmul(_mm256_loadu_pd(d2 + 2 * i), c2r, c2i));
        acc = _mm256_fmadd_pd(s, s, acc);
    }
    double s = hsum(acc);
    if (i < n) s += scalar::combine2_abs2_sum(f1 + i, f2 + i, c1, c2, n - i);
    return s;
}

void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n) {
    const __m256d quarter = _mm256_set1_pd(0.25);
    double* od = reinterpret_cast<double*>(o);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d re =
            _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(i0 + i), _mm256_loadu_pd(i2 + i)), quarter);
        const __m256d im =
            _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(i3 + i), _mm256_loadu_pd(i1 + i)), quarter);
        const __m256d lo = _mm256_unpacklo_pd(re, im);  // [r0 i0 r2 i2]
        const __m256d hi = _mm256_unpackhi_pd(re, im);  // [r1 i1 r3 i3]
        _mm256_storeu_pd(od + 2 * i, _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(od + 2 * i + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    if (i < n) scalar::four_step(o + i, i0 + i, i1 + i, i2 + i, i3 + i, n - i);
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void wrap_inplace(double* p, std::size_t n) {
    const __m256d inv_two_pi = _mm256_set1_pd(1.0 / kTwoPi);
    const __m256d two_pi = _mm256_set1_pd(kTwoPi);
    const __m256d pos_pi = _mm256_set1_pd(kPi);
    const __m256d neg_pi = _mm256_set1_pd(-kPi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(p + i);
        const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, inv_two_pi),
                                          _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d y = _mm256_sub_pd(x, _mm256_mul_pd(k, two_pi));
        const __m256d gt = _mm256_cmp_pd(y, pos_pi, _CMP_GT_OQ);
        y = _mm256_blendv_pd(y, _mm256_sub_pd(y, two_pi), gt);
        const __m256d le = _mm256_cmp_pd(y, neg_pi, _CMP_LE_OQ);
        y = _mm256_blendv_pd(y, _mm256_add_pd(y, two_pi), le);
        _mm256_storeu_pd(p + i, y);
    }
    if (i < n) scalar::wrap_inplace(p + i, n - i);
}

}  // namespace dpholo::kernels::avx2

#else  // non-x86 build: keep the symbols, delegate to the reference kernels

namespace dpholo::kernels::avx2 {

void axpy(Cplx* y, Cplx a, const Cplx* x, std::size_t n) { scalar::axpy(y, a, x, n); }
void scale(Cplx* y, double s, std::size_t n) { scalar::scale(y, s, n); }
void fill(Cplx* y, Cplx v, std::size_t n) { scalar::fill(y, v, n); }
void accum_abs2(double* acc, const Cplx* z, std::size_t n) { scalar::accum_abs2(acc, z, n); }
double sum_abs2(const Cplx* z, std::size_t n) { return scalar::sum_abs2(z, n); }
double combine4_abs2_sum(const Cplx* f1, const Cplx* f2, const Cplx* f3, const Cplx* f4,
                         Cplx c1, Cplx c2, Cplx c3, Cplx c4, std::size_t n) {
    return scalar::combine4_abs2_sum(f1, f2, f3, f4, c1, c2, c3, c4, n);
}
double combine2_abs2_sum(const Cplx* f1, const Cplx* f2, Cplx c1, Cplx c2, std::size_t n) {
    return scalar::combine2_abs2_sum(f1, f2, c1, c2, n);
}
void four_step(Cplx* o, const double* i0, const double* i1, const double* i2,
               const double* i3, std::size_t n) {
    scalar::four_step(o, i0, i1, i2, i3, n);
}
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void wrap_inplace(double* p, std::size_t n) { scalar::wrap_inplace(p, n); }

}  // namespace dpholo::kernels::avx2

#endif
