/**
 * @file kernels.hpp
 * @brief Data-parallel complex kernels with runtime ISA selection.
 *
 * Every kernel has a scalar reference implementation and, where the target
 * supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The variant is
 * chosen once, on first use, from the CPU feature flags; the environment
 * variable ADAPTDET_ISA=scalar forces the reference path. Matrices are
 * column-major with interleaved real/imaginary parts, the layout of both
 * std::complex<double> arrays and Eigen::MatrixXcd.
 */
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "adaptdet/types.hpp"

namespace adaptdet::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

/// Best variant the running CPU supports.
Isa detected_isa() noexcept;

/// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Switch the dispatch table. Throws Error(unsupported) if the CPU lacks @p isa.
void force_isa(Isa isa);

/// out = X Xᴴ for a rows×cols column-major X; out is rows×rows column-major.
/// The lower triangle is accumulated and mirrored, so out is exactly Hermitian.
void hermitian_gram(std::span<const cplx> x, std::size_t rows, std::size_t cols,
                    std::span<cplx> out);

/// Σ conj(a_i)·b_i
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);

/// Σ |a_i|²
double norm2(std::span<const cplx> a);

/// Number of entries strictly greater than @p threshold.
std::size_t count_greater(std::span<const double> values, double threshold);

// Eigen conveniences.
CMatrix gram(const CMatrix& x);
double norm2(const CVector& a);
cplx dotc(const CVector& a, const CVector& b);

}  // namespace adaptdet::kernels
