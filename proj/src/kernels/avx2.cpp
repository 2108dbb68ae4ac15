// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace adaptdet::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// lane0 - lane1 + lane2 - lane3
inline double alt_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out) {
    const auto* xd = reinterpret_cast<const double*>(x);
    auto* od = reinterpret_cast<double*>(out);
    for (std::size_t j = 0; j < rows; ++j) {
        std::size_t i = j;
        // two complex rows per register
        for (; i + 2 <= rows; i += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t l = 0; l < cols; ++l) {
                const double* col = xd + 2 * l * rows;
                const __m256d v = _mm256_loadu_pd(col + 2 * i);
                const __m256d sw = _mm256_permute_pd(v, 0b0101);
                const double cr = col[2 * j];
                const double ci = col[2 * j + 1];
                acc = _mm256_fmadd_pd(v, _mm256_set1_pd(cr), acc);
                acc = _mm256_fmadd_pd(sw, _mm256_setr_pd(ci, -ci, ci, -ci), acc);
            }
            _mm256_storeu_pd(od + 2 * (j * rows + i), acc);
        }
        for (; i < rows; ++i) {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t l = 0; l < cols; ++l) {
                const double* col = xd + 2 * l * rows;
                const double a = col[2 * i], b = col[2 * i + 1];
                const double cr = col[2 * j], ci = col[2 * j + 1];
                re += a * cr + b * ci;
                im += b * cr - a * ci;
            }
            od[2 * (j * rows + i)] = re;
            od[2 * (j * rows + i) + 1] = im;
        }
    }
    for (std::size_t j = 0; j < rows; ++j) {
        od[2 * (j * rows + j) + 1] = 0.0;
        for (std::size_t i = j + 1; i < rows; ++i) {
            od[2 * (i * rows + j)] = od[2 * (j * rows + i)];
            od[2 * (i * rows + j) + 1] = -od[2 * (j * rows + i) + 1];
        }
    }
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
    const auto* ad = reinterpret_cast<const double*>(a);
    const auto* bd = reinterpret_cast<const double*>(b);
    __m256d re_acc = _mm256_setzero_pd();
    __m256d im_acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(ad + 2 * i);
        const __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        re_acc = _mm256_fmadd_pd(va, vb, re_acc);
        im_acc = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), im_acc);
    }
    double re = hsum(re_acc);
    double im = alt_sum(im_acc);
    for (; i < n; ++i) {
        const double ar = ad[2 * i], ai = ad[2 * i + 1];
        const double br = bd[2 * i], bi = bd[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
    const auto* ad = reinterpret_cast<const double*>(a);
    const std::size_t len = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(ad + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < len; ++i) s += ad[i] * ad[i];
    return s;
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d m = _mm256_cmp_pd(_mm256_loadu_pd(v + i), t, _CMP_GT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(m)));
    }
    for (; i < n; ++i) c += v[i] > threshold ? 1 : 0;
    return c;
}

}  // namespace adaptdet::kernels::avx2
