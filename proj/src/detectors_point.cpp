#include "adaptdet/detectors_point.hpp"

#include <cmath>
#include <complex>

#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"

namespace adaptdet {

PointStats subspace_stats(const CVector& xw, const CMatrix& qw) {
    if (xw.size() != qw.rows()) throw Error(ErrorKind::dimension, "x and H row mismatch");
    const CVector coeff = qw.adjoint() * xw;
    const double a = kernels::norm2(coeff);
    const double b = kernels::norm2(xw);
    // The residual is formed explicitly so c stays accurate when a ≈ b.
    const CVector resid = xw - qw * coeff;
    const double c = kernels::norm2(resid);

    PointStats st;
    st.beta = 1.0 / (1.0 + c);
    st.sglrt = a / (1.0 + c);
    st.srao = a / ((1.0 + b) * (1.0 + c));
    st.samf = a;
    st.asd = b > 0.0 ? a / b : 0.0;
    st.sabort = (1.0 + a) / (1.0 + c);
    st.wsabort = (1.0 + b) / ((1.0 + c) * (1.0 + c));
    st.dnsamf = b > 0.0 ? a / (b * (1.0 + c)) : 0.0;
    st.aed = b;
    return st;
}

PointStats subspace_bank(const CVector& x, const CMatrix& s, const CMatrix& h) {
    if (x.size() != s.rows() || h.rows() != s.rows()) {
        throw Error(ErrorKind::dimension, "subspace_bank: x, S and H sizes disagree");
    }
    const linalg::Whitener white(s);
    return subspace_stats(white(x), linalg::orthonormal_basis(white(h)));
}

RankOneStats rank_one_bank(const CVector& x, const CMatrix& s, const CVector& steer) {
    if (x.size() != s.rows() || steer.size() != s.rows()) {
        throw Error(ErrorKind::dimension, "rank_one_bank: x, S and s sizes disagree");
    }
    if (steer.norm() == 0.0) throw Error(ErrorKind::parameter, "steering vector is zero");
    const linalg::Whitener white(s);
    const CVector xw = white(x);
    const CVector sw = white(steer);
    const PointStats p = subspace_stats(xw, linalg::orthonormal_basis(sw));

    RankOneStats st;
    st.kglrt = p.sglrt;
    st.amf = p.samf;
    st.dmrao = p.srao;
    st.ace = p.asd;
    const double ss = kernels::norm2(sw);
    st.smi = std::norm(kernels::dotc(sw, xw)) / (ss * ss);
    const CVector s_inv_s = white.inv_sqrt() * sw;
    st.w_smi = s_inv_s / ss;
    st.w_amf = s_inv_s / std::sqrt(ss);
    return st;
}

ClairvoyantStats clairvoyant_bank(const CVector& x, const CMatrix& r, const CMatrix& h) {
    if (x.size() != r.rows() || h.rows() != r.rows() || h.cols() < 1) {
        throw Error(ErrorKind::dimension, "clairvoyant_bank: x, R and H sizes disagree");
    }
    const linalg::Whitener white(r);
    const CVector xw = white(x);
    const CMatrix hw = white(h);
    ClairvoyantStats st;
    st.smf = subspace_stats(xw, linalg::orthonormal_basis(hw)).samf;
    const CVector sw = hw.col(0);
    const double ss = kernels::norm2(sw);
    if (ss == 0.0) throw Error(ErrorKind::parameter, "steering vector is zero");
    st.mf = std::norm(kernels::dotc(sw, xw)) / (ss * ss);
    st.w_mvdr = white.inv_sqrt() * sw / ss;
    return st;
}

}  // namespace adaptdet
