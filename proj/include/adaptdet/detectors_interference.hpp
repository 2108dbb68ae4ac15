/**
 * @file detectors_interference.hpp
 * @brief Point-target detectors that reject coherent subspace interference Jφ,
 *        and the effective-SNR geometry that drives their laws.
 */
#pragma once

#include "adaptdet/types.hpp"

namespace adaptdet {

struct InterferenceStats {
    double glrt_he_i = 0.0;
    double ts_glrt_he_i = 0.0;
    double glrt_phe_i = 0.0;
    double rao_he_i = 0.0;
    double ts_rao_he_i = 0.0;
    double rao_phe_i = 0.0;
    double wald_he_i = 0.0;
    double wald_phe_i = 0.0;
    double beta_i = 1.0;
};

struct InterferenceGeometry {
    double rho_eff = 0.0;
    double delta2_i = 0.0;
};

/// Whitened-input form. An empty J (zero columns) is allowed and reduces to
/// the interference-free bank.
InterferenceStats interference_stats(const CVector& xw, const CMatrix& hw, const CMatrix& jw);

InterferenceStats interference_bank(const CVector& x, const CMatrix& s, const CMatrix& h,
                                    const CMatrix& j);

/// ρ_eff and δ²_I in the R-whitened space.
InterferenceGeometry mismatch_geometry(const CVector& s0, const CMatrix& r, const CMatrix& h,
                                       const CMatrix& j);

}  // namespace adaptdet
