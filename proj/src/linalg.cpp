#include "adaptdet/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "adaptdet/error.hpp"

namespace adaptdet::linalg {
namespace {

using EigenSolver = Eigen::SelfAdjointEigenSolver<CMatrix>;

void require_hermitian(const CMatrix& s, const char* what) {
    if (s.rows() != s.cols() || s.rows() == 0) {
        throw Error(ErrorKind::dimension, std::string(what) + ": matrix must be square and non-empty");
    }
    if (!s.allFinite()) {
        throw Error(ErrorKind::definiteness, std::string(what) + ": non-finite entries");
    }
    const double scale = s.cwiseAbs().maxCoeff();
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw Error(ErrorKind::definiteness, std::string(what) + ": matrix is not Hermitian");
    }
}

void require_positive(const RVector& ev, const char* what) {
    if (!(ev.minCoeff() > 0.0)) {
        throw Error(ErrorKind::definiteness, std::string(what) + ": matrix is not positive definite");
    }
}

EigenSolver decompose_pd(const CMatrix& s, const char* what) {
    require_hermitian(s, what);
    EigenSolver es(s);
    require_positive(es.eigenvalues(), what);
    return es;
}

// V f(Λ) Vᴴ, with the result symmetrized so it is Hermitian to rounding.
CMatrix spectral_function(const EigenSolver& es, double (*f)(double)) {
    const CMatrix& v = es.eigenvectors();
    RVector d = es.eigenvalues().unaryExpr(f);
    CMatrix out = v * d.asDiagonal() * v.adjoint();
    return 0.5 * (out + out.adjoint());
}

}  // namespace

void require_hermitian_pd(const CMatrix& s, const char* what) {
    require_hermitian(s, what);
    require_positive(EigenSolver(s, Eigen::EigenvaluesOnly).eigenvalues(), what);
}

CMatrix inv_sqrt(const CMatrix& s) {
    return spectral_function(decompose_pd(s, "inv_sqrt"), [](double l) { return 1.0 / std::sqrt(l); });
}

CMatrix hermitian_sqrt(const CMatrix& s) {
    return spectral_function(decompose_pd(s, "hermitian_sqrt"), [](double l) { return std::sqrt(l); });
}

RVector hermitian_eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::dimension, "hermitian_eigenvalues: matrix not square");
    if (a.rows() == 0) return RVector();
    return EigenSolver(a, Eigen::EigenvaluesOnly).eigenvalues();
}

double log_det_hpd(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorKind::definiteness, "log_det_hpd: matrix is not positive definite");
    }
    const auto& l = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

CMatrix orthonormal_basis(const CMatrix& a) {
    const Eigen::Index n = a.rows();
    const Eigen::Index k = a.cols();
    if (k == 0) return CMatrix(n, 0);
    if (k > n) throw Error(ErrorKind::rank, "more columns than rows");
    const RVector ev = hermitian_eigenvalues(a.adjoint() * a);
    if (!(ev(k - 1) > 0.0) || ev(0) < kRankRcond * ev(k - 1)) {
        throw Error(ErrorKind::rank, "matrix is rank deficient or ill-conditioned");
    }
    Eigen::HouseholderQR<CMatrix> qr(a);
    return qr.householderQ() * CMatrix::Identity(n, k);
}

CMatrix ortho_projector(const CMatrix& a) {
    const CMatrix q = orthonormal_basis(a);
    CMatrix p = q * q.adjoint();
    return 0.5 * (p + p.adjoint());
}

CMatrix ortho_complement_projector(const CMatrix& a) {
    return CMatrix::Identity(a.rows(), a.rows()) - ortho_projector(a);
}

CMatrix oblique_projector(const CMatrix& h, const CMatrix& j) {
    if (h.rows() != j.rows()) throw Error(ErrorKind::dimension, "oblique_projector: row mismatch");
    orthonormal_basis(hconcat(h, j));
    const CMatrix pj_perp = ortho_complement_projector(j);
    const CMatrix g = h.adjoint() * pj_perp * h;
    const RVector ev = hermitian_eigenvalues(g);
    if (ev.size() == 0 || !(ev(0) > kRankRcond * ev(ev.size() - 1))) {
        throw Error(ErrorKind::rank, "oblique_projector: Hᴴ P_J^⊥ H is singular");
    }
    return h * g.ldlt().solve(h.adjoint() * pj_perp);
}

CMatrix hconcat(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::dimension, "hconcat: row mismatch");
    CMatrix out(a.rows(), a.cols() + b.cols());
    out << a, b;
    return out;
}

EigPair max_eig_pair(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw Error(ErrorKind::dimension, "max_eig_pair: A and B must be square with equal size");
    }
    const CMatrix t = inv_sqrt(b);
    CMatrix c = t * a * t;
    c = 0.5 * (c + c.adjoint());
    EigenSolver es(c);
    const Eigen::Index last = c.rows() - 1;
    EigPair out;
    out.value = std::max(es.eigenvalues()(last), 0.0);
    out.vector = t * es.eigenvectors().col(last);
    out.vector.normalize();
    return out;
}

double max_eigenvalue(const CMatrix& a) {
    const RVector ev = hermitian_eigenvalues(a);
    if (ev.size() == 0) throw Error(ErrorKind::dimension, "max_eigenvalue: empty matrix");
    return ev(ev.size() - 1);
}

Whitener::Whitener(const CMatrix& s) : t_(linalg::inv_sqrt(s)) {}

}  // namespace adaptdet::linalg
