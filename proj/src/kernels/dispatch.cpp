#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>

#include "adaptdet/error.hpp"
#include "kernels_impl.hpp"

namespace adaptdet::kernels {
namespace {

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(ADAPTDET_HAVE_AVX2_KERNELS)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(ADAPTDET_HAVE_NEON_KERNELS)
            return true;
#else
            return false;
#endif
    }
    return false;
}

struct Dispatch {
    Isa isa;
    KernelTable table;
};

Dispatch make_initial() {
    Isa isa = detected_isa();
    if (const char* env = std::getenv("ADAPTDET_ISA"); env != nullptr && std::string(env) == "scalar") {
        isa = Isa::scalar;
    }
    return {isa, table_for(isa)};
}

Dispatch& current() {
    static Dispatch d = make_initial();
    return d;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

Isa detected_isa() noexcept {
    if (cpu_supports(Isa::avx2)) return Isa::avx2;
    if (cpu_supports(Isa::neon)) return Isa::neon;
    return Isa::scalar;
}

Isa active_isa() noexcept { return current().isa; }

void force_isa(Isa isa) {
    if (!cpu_supports(isa)) {
        throw Error(ErrorKind::unsupported, "CPU does not support " + std::string(isa_name(isa)));
    }
    current() = {isa, table_for(isa)};
}

KernelTable table_for(Isa isa) {
    switch (isa) {
#if defined(ADAPTDET_HAVE_AVX2_KERNELS)
        case Isa::avx2:
            return {avx2::hermitian_gram, avx2::dotc, avx2::norm2, avx2::count_greater};
#endif
#if defined(ADAPTDET_HAVE_NEON_KERNELS)
        case Isa::neon:
            return {neon::hermitian_gram, neon::dotc, neon::norm2, neon::count_greater};
#endif
        default:
            return {scalar::hermitian_gram, scalar::dotc, scalar::norm2, scalar::count_greater};
    }
}

void hermitian_gram(std::span<const cplx> x, std::size_t rows, std::size_t cols,
                    std::span<cplx> out) {
    if (x.size() != rows * cols || out.size() != rows * rows) {
        throw Error(ErrorKind::dimension, "hermitian_gram: buffer sizes do not match rows/cols");
    }
    current().table.hermitian_gram(x.data(), rows, cols, out.data());
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::dimension, "dotc: length mismatch");
    return current().table.dotc(a.data(), b.data(), a.size());
}

double norm2(std::span<const cplx> a) { return current().table.norm2(a.data(), a.size()); }

std::size_t count_greater(std::span<const double> values, double threshold) {
    return current().table.count_greater(values.data(), values.size(), threshold);
}

CMatrix gram(const CMatrix& x) {
    CMatrix out(x.rows(), x.rows());
    hermitian_gram({x.data(), static_cast<std::size_t>(x.size())}, static_cast<std::size_t>(x.rows()),
                   static_cast<std::size_t>(x.cols()),
                   {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

double norm2(const CVector& a) { return norm2(std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size()))); }

cplx dotc(const CVector& a, const CVector& b) {
    return dotc(std::span<const cplx>(a.data(), static_cast<std::size_t>(a.size())),
                std::span<const cplx>(b.data(), static_cast<std::size_t>(b.size())));
}

}  // namespace adaptdet::kernels
