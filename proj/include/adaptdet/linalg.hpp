/**
 * @file linalg.hpp
 * @brief Hermitian linear-algebra primitives: whitening, projectors, eigenpairs.
 */
#pragma once

#include "adaptdet/types.hpp"

namespace adaptdet::linalg {

/// Reciprocal condition number below which a Gram matrix counts as singular.
inline constexpr double kRankRcond = 1e-12;

/// Throws Error(definiteness) unless @p s is square, Hermitian and has positive eigenvalues.
void require_hermitian_pd(const CMatrix& s, const char* what);

/// Hermitian T with T·S·T = I, from the eigendecomposition of S.
CMatrix inv_sqrt(const CMatrix& s);

/// Hermitian square root S^{1/2}.
CMatrix hermitian_sqrt(const CMatrix& s);

/// Eigenvalues of a Hermitian matrix in ascending order.
RVector hermitian_eigenvalues(const CMatrix& a);

/// log|A| for Hermitian positive definite A.
double log_det_hpd(const CMatrix& a);

/// Orthonormal basis Q of span(A); Error(rank) if AᴴA has rcond < 1e-12.
/// A matrix with zero columns yields an N×0 basis.
CMatrix orthonormal_basis(const CMatrix& a);

/// P_A = A(AᴴA)⁻¹Aᴴ. Zero columns give the zero matrix.
CMatrix ortho_projector(const CMatrix& a);

/// P_A^⊥ = I − P_A.
CMatrix ortho_complement_projector(const CMatrix& a);

/// P_{H|J} = H(Hᴴ P_J^⊥ H)⁻¹ Hᴴ P_J^⊥, projector onto span(H) along span(J).
CMatrix oblique_projector(const CMatrix& h, const CMatrix& j);

/// [A B]
CMatrix hconcat(const CMatrix& a, const CMatrix& b);

struct EigPair {
    double value = 0.0;
    CVector vector;  ///< unit norm
};

/// Largest generalized eigenpair of A v = λ B v for Hermitian PSD A and PD B,
/// solved as the ordinary problem for B^{-1/2} A B^{-1/2}.
EigPair max_eig_pair(const CMatrix& a, const CMatrix& b);

/// Largest eigenvalue of a Hermitian matrix.
double max_eigenvalue(const CMatrix& a);

/// Precomputed S^{-1/2} applied to data, steering vectors and subspaces.
class Whitener {
  public:
    explicit Whitener(const CMatrix& s);

    const CMatrix& inv_sqrt() const noexcept { return t_; }
    CMatrix operator()(const CMatrix& m) const { return t_ * m; }
    CVector operator()(const CVector& v) const { return t_ * v; }

  private:
    CMatrix t_;
};

}  // namespace adaptdet::linalg
