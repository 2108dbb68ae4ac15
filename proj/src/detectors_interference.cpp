#include "adaptdet/detectors_interference.hpp"

#include <algorithm>

#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"

namespace adaptdet {
namespace {

CVector remove_span(const CMatrix& q, const CVector& v) {
    if (q.cols() == 0) return v;
    return v - q * (q.adjoint() * v);
}

CMatrix remove_span(const CMatrix& q, const CMatrix& m) {
    if (q.cols() == 0) return m;
    return m - q * (q.adjoint() * m);
}

}  // namespace

InterferenceStats interference_stats(const CVector& xw, const CMatrix& hw, const CMatrix& jw) {
    if (xw.size() != hw.rows() || jw.rows() != hw.rows()) {
        throw Error(ErrorKind::dimension, "interference_stats: x, H and J sizes disagree");
    }
    // Full column rank of [H̃ J̃] is required for every statistic below.
    const CMatrix qb = linalg::orthonormal_basis(linalg::hconcat(hw, jw));
    const CMatrix qj = linalg::orthonormal_basis(jw);
    const CMatrix qh = linalg::orthonormal_basis(hw);

    const CVector xj = remove_span(qj, xw);             // P_J̃^⊥ x̃
    const CMatrix hj = remove_span(qj, hw);             // P_J̃^⊥ H̃
    const CMatrix qhj = linalg::orthonormal_basis(hj);  // basis of span(P_J̃^⊥ H̃)

    const double a_i = kernels::norm2(CVector(qhj.adjoint() * xj));
    const double b_i = kernels::norm2(xj);
    const double c_i = kernels::norm2(remove_span(qhj, xj));

    InterferenceStats st;
    st.beta_i = 1.0 / (1.0 + c_i);
    st.glrt_he_i = a_i / (1.0 + c_i);
    st.ts_glrt_he_i = a_i;
    st.glrt_phe_i = b_i > 0.0 ? a_i / b_i : 0.0;

    const double rao_num = kernels::norm2(CVector(qh.adjoint() * xj));  // x̃ᴴP_J^⊥P_H P_J^⊥x̃
    const double rao_perp = kernels::norm2(remove_span(qh, xj));       // x̃ᴴP_J^⊥P_H^⊥P_J^⊥x̃
    st.rao_he_i = rao_num / ((1.0 + b_i) * (1.0 + rao_perp));
    st.ts_rao_he_i = rao_num;
    st.rao_phe_i = b_i > 0.0 ? rao_num / b_i : 0.0;

    // P_{H̃|J̃} x̃ = H̃ (H̃ᴴP_J^⊥H̃)⁻¹ H̃ᴴP_J^⊥ x̃
    const CMatrix g = hw.adjoint() * hj;
    const CVector coords = g.ldlt().solve(CVector(hw.adjoint() * xj));
    st.wald_he_i = kernels::norm2(CVector(hw * coords));
    const double resid_b = kernels::norm2(remove_span(qb, xw));
    st.wald_phe_i = resid_b > 0.0 ? st.wald_he_i / resid_b : 0.0;
    return st;
}

InterferenceStats interference_bank(const CVector& x, const CMatrix& s, const CMatrix& h,
                                    const CMatrix& j) {
    if (x.size() != s.rows() || h.rows() != s.rows() || j.rows() != s.rows()) {
        throw Error(ErrorKind::dimension, "interference_bank: x, S, H and J sizes disagree");
    }
    const linalg::Whitener white(s);
    return interference_stats(white(x), white(h), white(j));
}

InterferenceGeometry mismatch_geometry(const CVector& s0, const CMatrix& r, const CMatrix& h,
                                       const CMatrix& j) {
    if (s0.size() != r.rows() || h.rows() != r.rows() || j.rows() != r.rows()) {
        throw Error(ErrorKind::dimension, "mismatch_geometry: s0, R, H and J sizes disagree");
    }
    const linalg::Whitener white(r);
    const CVector sb = white(s0);
    const CMatrix hb = white(h);
    const CMatrix jb = white(j);
    linalg::orthonormal_basis(linalg::hconcat(hb, jb));
    const CMatrix qj = linalg::orthonormal_basis(jb);
    const CVector sj = remove_span(qj, sb);
    const CMatrix qhj = linalg::orthonormal_basis(remove_span(qj, hb));
    InterferenceGeometry g;
    g.rho_eff = kernels::norm2(CVector(qhj.adjoint() * sj));
    g.delta2_i = kernels::norm2(remove_span(qhj, sj));
    return g;
}

}  // namespace adaptdet
