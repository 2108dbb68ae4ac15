// Reference kernels. Plain loops over the interleaved real/imaginary layout,
// no FMA contraction assumptions; the SIMD variants are checked against these.
#include "kernels_impl.hpp"

namespace adaptdet::kernels::scalar {

void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out) {
    const auto* xd = reinterpret_cast<const double*>(x);
    auto* od = reinterpret_cast<double*>(out);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = j; i < rows; ++i) {
            double re = 0.0;
            double im = 0.0;
            for (std::size_t l = 0; l < cols; ++l) {
                const double a = xd[2 * (l * rows + i)];
                const double b = xd[2 * (l * rows + i) + 1];
                const double cr = xd[2 * (l * rows + j)];
                const double ci = xd[2 * (l * rows + j) + 1];
                // x_i * conj(x_j)
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
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = ad[2 * i], ai = ad[2 * i + 1];
        const double br = bd[2 * i], bi = bd[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm2(const cplx* a, std::size_t n) {
    const auto* ad = reinterpret_cast<const double*>(a);
    double s = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) s += ad[i] * ad[i];
    return s;
}

std::size_t count_greater(const double* v, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += v[i] > threshold ? 1 : 0;
    return c;
}

}  // namespace adaptdet::kernels::scalar
