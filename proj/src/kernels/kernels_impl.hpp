// Per-ISA kernel entry points. Internal to the library and its tests.
#pragma once

#include <cstddef>

#include "adaptdet/kernels.hpp"

namespace adaptdet::kernels {

struct KernelTable {
    void (*hermitian_gram)(const cplx* x, std::size_t rows, std::size_t cols, cplx* out);
    cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
    double (*norm2)(const cplx* a, std::size_t n);
    std::size_t (*count_greater)(const double* v, std::size_t n, double threshold);
};

namespace scalar {
void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
std::size_t count_greater(const double* v, std::size_t n, double threshold);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ADAPTDET_HAVE_AVX2_KERNELS 1
namespace avx2 {
void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
std::size_t count_greater(const double* v, std::size_t n, double threshold);
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define ADAPTDET_HAVE_NEON_KERNELS 1
namespace neon {
void hermitian_gram(const cplx* x, std::size_t rows, std::size_t cols, cplx* out);
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
double norm2(const cplx* a, std::size_t n);
std::size_t count_greater(const double* v, std::size_t n, double threshold);
}  // namespace neon
#endif

KernelTable table_for(Isa isa);

}  // namespace adaptdet::kernels
