/**
 * @file detectors_distributed.hpp
 * @brief Range-spread (N×K test data) statistics: rank-one signal banks for
 *        homogeneous and partially homogeneous noise, direction detectors and
 *        double-subspace detectors.
 */
#pragma once

#include <span>

#include "adaptdet/types.hpp"

namespace adaptdet {

struct DistributedHeStats {
    double gkglrt = 0.0;
    double gamf = 0.0;
    double rao_he = 0.0;
};

struct DistributedPheStats {
    double glrt_phe = 0.0;
    double gasd = 0.0;
    double rao_phe = 0.0;
    double wald_phe = 0.0;
    double sigma0_hat = 0.0;  ///< σ̂₀²
    double sigma1_hat = 0.0;  ///< σ̂₁²
};

struct DirectionStats {
    double glrdd = 0.0;
    double amdd = 0.0;
    double snrdd = 0.0;
    double gadd = 0.0;
    CVector theta_max;
};

struct DosStats {
    double glrt_dos = 1.0;
    double rao_dos = 0.0;
    double wald_dos = 0.0;
};

/// Whitened-input forms; xw = S^{-1/2}X, sw = S^{-1/2}s, hw = S^{-1/2}H.
DistributedHeStats distributed_he_stats(const CMatrix& xw, const CVector& sw);
DistributedPheStats distributed_phe_stats(const CMatrix& xw, const CVector& sw, int training_count);
DirectionStats direction_stats(const CMatrix& xw, const CMatrix& hw);
DosStats dos_stats(const CMatrix& xw, const CMatrix& hw);

DistributedHeStats distributed_rank1_he(const CMatrix& x, const CMatrix& s, const CVector& steer);

/// The Rao-HE statistic evaluated through the matrix-inversion-lemma recast
/// in whitened coordinates (the main form is evaluated in raw coordinates).
double rao_he_recast(const CMatrix& x, const CMatrix& s, const CVector& steer);

/// Unique σ² > 0 with Σ λ_k/(λ_k + σ²) = target. Eigenvalues at or below
/// 1e-12·max(λ) are treated as zero. Error(infeasible) unless 0 < target < r.
double solve_sigma(std::span<const double> eigs, double target);

/// @p training_count is L, the number of training vectors behind S.
DistributedPheStats distributed_rank1_phe(const CMatrix& x, const CMatrix& s, const CVector& steer,
                                          int training_count);

DirectionStats direction_bank(const CMatrix& x, const CMatrix& s, const CMatrix& h);

DosStats dos_bank(const CMatrix& x, const CMatrix& s, const CMatrix& h);

}  // namespace adaptdet
