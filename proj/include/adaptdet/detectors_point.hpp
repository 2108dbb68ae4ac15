/**
 * @file detectors_point.hpp
 * @brief Point-target statistics: the adaptive subspace bank, the rank-one
 *        bank with SMI/AMF weights, and the known-covariance references.
 */
#pragma once

#include "adaptdet/types.hpp"

namespace adaptdet {

struct PointStats {
    double sglrt = 0.0;
    double srao = 0.0;
    double samf = 0.0;
    double asd = 0.0;
    double sabort = 0.0;
    double wsabort = 0.0;
    double dnsamf = 0.0;
    double aed = 0.0;
    double beta = 1.0;  ///< loss factor 1/(1 + x̃ᴴP^⊥x̃)
};

struct RankOneStats {
    double kglrt = 0.0;
    double amf = 0.0;
    double dmrao = 0.0;
    double ace = 0.0;
    double smi = 0.0;
    CVector w_smi;  ///< S⁻¹s/(sᴴS⁻¹s)
    CVector w_amf;  ///< S⁻¹s/√(sᴴS⁻¹s)
};

struct ClairvoyantStats {
    double smf = 0.0;
    double mf = 0.0;
    CVector w_mvdr;  ///< R⁻¹s/(sᴴR⁻¹s)
};

/// Subspace bank from whitened data x̃ and an orthonormal basis Q of span(H̃).
/// Shared by every entry point so one whitening serves the whole bank.
PointStats subspace_stats(const CVector& xw, const CMatrix& qw);

/// Whitens (x, H) by S^{-1/2} and evaluates the subspace bank.
PointStats subspace_bank(const CVector& x, const CMatrix& s, const CMatrix& h);

RankOneStats rank_one_bank(const CVector& x, const CMatrix& s, const CVector& steer);

/// smf = xᴴR⁻¹H(HᴴR⁻¹H)⁻¹HᴴR⁻¹x, mf for s = first column of H.
ClairvoyantStats clairvoyant_bank(const CVector& x, const CMatrix& r, const CMatrix& h);

}  // namespace adaptdet
