#include "adaptdet/detectors_distributed.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/SVD>

#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"

namespace adaptdet {
namespace {

void check_shapes(const CMatrix& x, const CMatrix& s, Eigen::Index steer_rows, const char* what) {
    if (x.rows() != s.rows() || steer_rows != s.rows() || x.cols() < 1) {
        throw Error(ErrorKind::dimension, std::string(what) + ": X, S and steering sizes disagree");
    }
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// tr[Xᴴ M⁻¹ s (sᴴ M⁻¹ s)⁻¹ sᴴ M⁻¹ X] for a single steering vector.
double rank_one_trace_form(const CMatrix& xw, const CVector& sw, const CMatrix& m) {
    const CVector y = m.ldlt().solve(sw);
    const double den = kernels::dotc(sw, y).real();
    return kernels::norm2(CVector(xw.adjoint() * y)) / den;
}

// Σ log(1 + λ/σ²) over the eigenvalues of a PSD matrix.
double log_det_shifted(const RVector& eigs, double sigma2) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) acc += std::log1p(std::max(eigs(i), 0.0) / sigma2);
    return acc;
}

}  // namespace

DistributedHeStats distributed_he_stats(const CMatrix& xw, const CVector& sw) {
    if (xw.rows() != sw.size()) throw Error(ErrorKind::dimension, "X and s row mismatch");
    const double ss = kernels::norm2(sw);
    if (ss == 0.0) throw Error(ErrorKind::parameter, "steering vector is zero");
    const CVector v = xw.adjoint() * sw;
    // With X = UΣWᴴ: sᴴX(I + XᴴX)⁻¹Xᴴs = Σ σ²|uᴴs|²/(1+σ²) and
    // sᴴ(I + XXᴴ)⁻¹s = ‖s − UUᴴs‖² + Σ |uᴴs|²/(1+σ²); both are sums of
    // non-negative terms, so neither cancels.
    const Eigen::JacobiSVD<CMatrix> svd(xw, Eigen::ComputeThinU);
    const CMatrix& u = svd.matrixU();
    const RVector sig = svd.singularValues();
    const CVector us = u.adjoint() * sw;
    double num = 0.0;
    double den = kernels::norm2(CVector(sw - u * us));
    for (Eigen::Index i = 0; i < sig.size(); ++i) {
        const double s2 = sig(i) * sig(i);
        const double w = std::norm(us(i)) / (1.0 + s2);
        num += s2 * w;
        den += w;
    }
    const CMatrix m = CMatrix::Identity(xw.rows(), xw.rows()) + kernels::gram(xw);

    DistributedHeStats st;
    st.gkglrt = num / den;
    st.gamf = kernels::norm2(v) / ss;
    st.rao_he = rank_one_trace_form(xw, sw, m);
    return st;
}

DistributedHeStats distributed_rank1_he(const CMatrix& x, const CMatrix& s, const CVector& steer) {
    check_shapes(x, s, steer.size(), "distributed_rank1_he");
    if (steer.norm() == 0.0) throw Error(ErrorKind::parameter, "steering vector is zero");
    const linalg::Whitener white(s);
    DistributedHeStats st = distributed_he_stats(white(x), white(steer));
    // Rao-HE in its original coordinates: sᴴA⁻¹XXᴴA⁻¹s / sᴴA⁻¹s with A = S + XXᴴ.
    const CMatrix a = s + kernels::gram(x);
    st.rao_he = rank_one_trace_form(x, steer, a);
    return st;
}

double rao_he_recast(const CMatrix& x, const CMatrix& s, const CVector& steer) {
    check_shapes(x, s, steer.size(), "rao_he_recast");
    const linalg::Whitener white(s);
    const CMatrix xw = white(x);
    const CVector sw = white(steer);
    const Eigen::Index k = xw.cols();
    const CMatrix id = CMatrix::Identity(k, k);
    const CMatrix p_perp = linalg::ortho_complement_projector(sw);
    const CMatrix b0 = id + xw.adjoint() * xw;
    const CMatrix b1 = id + xw.adjoint() * p_perp * xw;
    const CVector v = xw.adjoint() * sw;
    const CVector inner = b1.lu().solve(CVector(b0.lu().solve(v)));
    return kernels::dotc(v, inner).real() / kernels::norm2(sw);
}

double solve_sigma(std::span<const double> eigs, double target) {
    if (eigs.empty()) throw Error(ErrorKind::infeasible, "solve_sigma: no eigenvalues");
    double lmax = 0.0;
    for (double l : eigs) {
        if (!(l >= 0.0) && !(l > -1e-12)) throw Error(ErrorKind::parameter, "solve_sigma: negative eigenvalue");
        lmax = std::max(lmax, l);
    }
    if (!(lmax > 0.0)) throw Error(ErrorKind::infeasible, "solve_sigma: no positive eigenvalue");
    std::vector<double> pos;
    for (double l : eigs)
        if (l > 1e-12 * lmax) pos.push_back(l);
    const double r = static_cast<double>(pos.size());
    if (!(target > 0.0 && target < r)) {
        throw Error(ErrorKind::infeasible, "solve_sigma: target must lie in (0, number of positive eigenvalues)");
    }
    if (pos.size() == 1) return pos[0] * (1.0 - target) / target;

    auto f = [&](double sigma2) {
        double acc = 0.0;
        for (double l : pos) acc += l / (l + sigma2);
        return acc - target;
    };
    double lo = 1e-12 * lmax;
    for (int i = 0; i < 50 && f(lo) <= 0.0; ++i) lo *= 1e-3;
    double hi = lmax;
    for (int i = 0; i < 2000 && f(hi) >= 0.0; ++i) hi *= 2.0;
    // Geometric bisection: the root may sit many decades below max(λ).
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        (fm > 0.0 ? lo : hi) = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    // Newton polish inside the bracket.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        double fx = 0.0;
        double d = 0.0;
        for (double l : pos) {
            fx += l / (l + x);
            d -= l / ((l + x) * (l + x));
        }
        fx -= target;
        const double next = x - fx / d;
        if (!(next > lo && next < hi)) break;
        x = next;
    }
    return x;
}

DistributedPheStats distributed_phe_stats(const CMatrix& xw, const CVector& sw, int training_count) {
    if (xw.rows() != sw.size()) throw Error(ErrorKind::dimension, "X and s row mismatch");
    if (training_count < xw.rows()) throw Error(ErrorKind::insufficient_training, "L must be at least N");
    const Eigen::Index n = xw.rows();
    const Eigen::Index k = xw.cols();
    const double ss = kernels::norm2(sw);
    if (ss == 0.0) throw Error(ErrorKind::parameter, "steering vector is zero");
    const double lk = static_cast<double>(training_count + k);
    const double c = static_cast<double>(n * k) / lk;

    const CMatrix gram_k = kernels::gram(CMatrix(xw.adjoint()));
    const CMatrix q = linalg::orthonormal_basis(sw);
    const CMatrix xperp = xw - q * (q.adjoint() * xw);
    const CMatrix gram_perp = kernels::gram(CMatrix(xperp.adjoint()));
    const RVector eig0 = linalg::hermitian_eigenvalues(gram_k);
    const RVector eig1 = linalg::hermitian_eigenvalues(gram_perp);

    DistributedPheStats st;
    st.sigma0_hat = solve_sigma({eig0.data(), static_cast<std::size_t>(eig0.size())}, c);
    st.sigma1_hat = solve_sigma({eig1.data(), static_cast<std::size_t>(eig1.size())}, c);

    const double log_t = c * std::log(st.sigma0_hat) + log_det_shifted(eig0, st.sigma0_hat) -
                         c * std::log(st.sigma1_hat) - log_det_shifted(eig1, st.sigma1_hat);
    st.glrt_phe = std::exp(log_t);

    const CVector v = xw.adjoint() * sw;
    const double tr = gram_k.trace().real();
    st.gasd = tr > 0.0 ? kernels::norm2(v) / (ss * tr) : 0.0;

    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix m0 = id + kernels::gram(xw) / st.sigma0_hat;
    st.rao_phe = lk / st.sigma0_hat * rank_one_trace_form(xw, sw, m0);
    const CMatrix m1 = id + hermitian_part(kernels::gram(xperp)) / st.sigma1_hat;
    st.wald_phe = lk / st.sigma1_hat * rank_one_trace_form(xw, sw, m1);
    return st;
}

DistributedPheStats distributed_rank1_phe(const CMatrix& x, const CMatrix& s, const CVector& steer,
                                          int training_count) {
    check_shapes(x, s, steer.size(), "distributed_rank1_phe");
    const linalg::Whitener white(s);
    return distributed_phe_stats(white(x), white(steer), training_count);
}

DirectionStats direction_stats(const CMatrix& xw, const CMatrix& hw) {
    if (xw.rows() != hw.rows()) throw Error(ErrorKind::dimension, "X and H row mismatch");
    const Eigen::Index k = xw.cols();
    const CMatrix q = linalg::orthonormal_basis(hw);
    const CMatrix proj = q.adjoint() * xw;  // p×K coordinates of P_H̃X̃
    const CMatrix a = kernels::gram(CMatrix(proj.adjoint()));
    const CMatrix b = CMatrix::Identity(k, k) + kernels::gram(CMatrix(xw.adjoint()));

    DirectionStats st;
    st.glrdd = linalg::max_eig_pair(a, b).value;
    st.amdd = std::max(linalg::max_eigenvalue(a), 0.0);
    const double tr = xw.squaredNorm();
    st.gadd = tr > 0.0 ? st.amdd / tr : 0.0;

    const CMatrix hx = hw.adjoint() * xw;
    const CMatrix c = hermitian_part(hx * b.ldlt().solve(CMatrix(hx.adjoint())));
    const CMatrix hh = hermitian_part(hw.adjoint() * hw);
    st.theta_max = linalg::max_eig_pair(c, hh).vector;
    const CVector ht = hw * st.theta_max;
    const double den = kernels::norm2(ht);
    st.snrdd = kernels::norm2(CVector(xw.adjoint() * ht)) / den;
    return st;
}

DirectionStats direction_bank(const CMatrix& x, const CMatrix& s, const CMatrix& h) {
    check_shapes(x, s, h.rows(), "direction_bank");
    const linalg::Whitener white(s);
    return direction_stats(white(x), white(h));
}

DosStats dos_stats(const CMatrix& xw, const CMatrix& hw) {
    if (xw.rows() != hw.rows()) throw Error(ErrorKind::dimension, "X and H row mismatch");
    const Eigen::Index n = xw.rows();
    const Eigen::Index k = xw.cols();
    const CMatrix q = linalg::orthonormal_basis(hw);
    const CMatrix proj = q.adjoint() * xw;
    const CMatrix xperp = xw - q * proj;

    DosStats st;
    const CMatrix id = CMatrix::Identity(k, k);
    const double ld0 = linalg::log_det_hpd(id + kernels::gram(CMatrix(xw.adjoint())));
    const double ld1 = linalg::log_det_hpd(id + kernels::gram(CMatrix(xperp.adjoint())));
    st.glrt_dos = std::exp(ld0 - ld1);
    st.wald_dos = proj.squaredNorm();

    const CMatrix m = CMatrix::Identity(n, n) + kernels::gram(xw);
    const auto m_ldlt = m.ldlt();
    const CMatrix mi_h = m_ldlt.solve(hw);
    const CMatrix g = hermitian_part(hw.adjoint() * mi_h);
    const CMatrix z = mi_h.adjoint() * xw;  // Hᴴ M⁻¹ X
    st.rao_dos = (z.adjoint() * g.ldlt().solve(z)).trace().real();
    return st;
}

DosStats dos_bank(const CMatrix& x, const CMatrix& s, const CMatrix& h) {
    check_shapes(x, s, h.rows(), "dos_bank");
    const linalg::Whitener white(s);
    return dos_stats(white(x), white(h));
}

}  // namespace adaptdet
