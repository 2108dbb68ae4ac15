// NEON kernels for aarch64 (Advanced SIMD is mandatory there, no runtime probe).
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace adaptdet::kernels::neon {

void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out) {
    const auto* xd = reinterpret_cast<const double*>(x);
    auto* od = reinterpret_cast<double*>(out);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = j; i < rows; ++i) {
            float64x2_t acc = vdupq_n_f64(0.0);
            for (std::size_t l = 0; l < cols; ++l) {
                const double* col = xd + 2 * l * rows;
                const float64x2_t v = vld1q_f64(col + 2 * i);
                const float64x2_t sw = vextq_f64(v, v, 1);
                const double ci = col[2 * j + 1];
                const double signed_ci[2] = {ci, -ci};
                acc = vfmaq_n_f64(acc, v, col[2 * j]);
                acc = vfmaq_f64(acc, sw, vld1q_f64(signed_ci));
            }
            vst1q_f64(od + 2 * (j * rows + i), acc);
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
    float64x2_t re_acc = vdupq_n_f64(0.0);
    float64x2_t im_acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t va = vld1q_f64(ad + 2 * i);
        const float64x2_t vb = vld1q_f64(bd + 2 * i);
        re_acc = vfmaq_f64(re_acc, va, vb);
        im_acc = vfmaq_f64(im_acc, va, vextq_f64(vb, vb, 1));
    }
    return {vaddvq_f64(re_acc), vgetq_lane_f64(im_acc, 0) - vgetq_lane_f64(im_acc, 1)};
}

double norm2(const cplx* a, std::size_t n) {
    const auto* ad = reinterpret_cast<const double*>(a);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(ad + 2 * i);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
    const float64x2_t t = vdupq_n_f64(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const uint64x2_t m = vcgtq_f64(vld1q_f64(v + i), t);
        c += (vgetq_lane_u64(m, 0) & 1u) + (vgetq_lane_u64(m, 1) & 1u);
    }
    for (; i < n; ++i) c += v[i] > threshold ? 1 : 0;
    return c;
}

}  // namespace adaptdet::kernels::neon
