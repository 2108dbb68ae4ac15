#include <gtest/gtest.h>

#include "adaptdet/detectors_interference.hpp"
#include "adaptdet/detectors_point.hpp"
#include "adaptdet/linalg.hpp"
#include "adaptdet/scenario.hpp"
#include "test_support.hpp"

namespace adaptdet {
namespace {

using testing::rel_err;

TEST(Interference, HandCase) {
    const CMatrix s = CMatrix::Identity(3, 3);
    const CMatrix h = CMatrix::Identity(3, 3).col(0);
    const CMatrix j = CMatrix::Identity(3, 3).col(1);
    const InterferenceStats st = interference_bank(CVector::Ones(3), s, h, j);
    EXPECT_NEAR(st.glrt_he_i, 0.5, 1e-15);
    EXPECT_NEAR(st.wald_he_i, 1.0, 1e-15);
}

TEST(Interference, EmptyJReducesToSubspaceBank) {
    Rng rng(51);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 4 + rep % 8;
        const CMatrix s = testing::random_scm(rng, n);
        const CMatrix h = rng.complex_normal(n, 1 + rep % 3);
        const CVector x = rng.complex_normal(n, 1);
        const InterferenceStats is = interference_bank(x, s, h, CMatrix(n, 0));
        const PointStats p = subspace_bank(x, s, h);
        EXPECT_LT(rel_err(is.glrt_he_i, p.sglrt), 1e-12);
        EXPECT_LT(rel_err(is.ts_glrt_he_i, p.samf), 1e-12);
        EXPECT_LT(rel_err(is.wald_he_i, p.samf), 1e-12);
        EXPECT_LT(rel_err(is.beta_i, p.beta), 1e-12);
        EXPECT_LT(rel_err(is.glrt_phe_i, p.asd), 1e-12);
        EXPECT_LT(rel_err(is.rao_he_i, p.srao), 1e-12);
    }
}

TEST(Interference, Identities) {
    Rng rng(52);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 6 + rep % 7;
        const int p = 1 + rep % 3, q = 1 + rep % 2;
        const CMatrix s = testing::random_scm(rng, n);
        const CMatrix h = rng.complex_normal(n, p);
        const CMatrix j = rng.complex_normal(n, q);
        const CVector x = rng.complex_normal(n, 1) + j * rng.complex_normal(q, 1) * 5.0;
        const InterferenceStats st = interference_bank(x, s, h, j);
        EXPECT_LT(rel_err(st.ts_glrt_he_i, st.glrt_he_i / st.beta_i), 1e-12);
        const double u = st.glrt_he_i / (1 - st.beta_i);
        EXPECT_LT(rel_err(st.glrt_phe_i, u / (1 + u)), 1e-10);
        EXPECT_GT(st.beta_i, 0.0);
        EXPECT_LE(st.beta_i, 1.0);

        // Wald-HE-I through the oblique projector.
        const CMatrix t = linalg::inv_sqrt(s);
        const CMatrix e = linalg::oblique_projector(CMatrix(t * h), CMatrix(t * j));
        EXPECT_LT(rel_err(st.wald_he_i, (e * (t * x)).squaredNorm()), 1e-10);
    }
}

TEST(Interference, RecoordinatizationInvariance) {
    Rng rng(53);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 7;
        const CMatrix s = testing::random_scm(rng, n);
        const CMatrix h = rng.complex_normal(n, 2);
        const CMatrix j = rng.complex_normal(n, 2);
        const CVector x = rng.complex_normal(n, 1);
        const CMatrix q = rng.complex_normal(n, n) + 2.0 * CMatrix::Identity(n, n);
        const CMatrix qi = q.inverse();
        CMatrix s2 = qi * s * qi.adjoint();
        s2 = 0.5 * (s2 + s2.adjoint());
        const InterferenceStats a = interference_bank(x, s, h, j);
        const InterferenceStats b = interference_bank(CVector(qi * x), s2, CMatrix(qi * h), CMatrix(qi * j));
        EXPECT_LT(rel_err(a.glrt_he_i, b.glrt_he_i), 1e-9);
        EXPECT_LT(rel_err(a.ts_glrt_he_i, b.ts_glrt_he_i), 1e-9);
        EXPECT_LT(rel_err(a.rao_he_i, b.rao_he_i), 1e-9);
        EXPECT_LT(rel_err(a.ts_rao_he_i, b.ts_rao_he_i), 1e-9);
        EXPECT_LT(rel_err(a.wald_he_i, b.wald_he_i), 1e-9);
        EXPECT_LT(rel_err(a.glrt_phe_i, b.glrt_phe_i), 1e-9);
        EXPECT_LT(rel_err(a.rao_phe_i, b.rao_phe_i), 1e-9);
        EXPECT_LT(rel_err(a.wald_phe_i, b.wald_phe_i), 1e-9);
    }
}

TEST(Interference, PheStatisticsScaleInvariant) {
    Rng rng(54);
    const CMatrix s = testing::random_scm(rng, 8);
    const CMatrix h = rng.complex_normal(8, 2);
    const CMatrix j = rng.complex_normal(8, 1);
    const CVector x = rng.complex_normal(8, 1);
    const InterferenceStats a = interference_bank(x, s, h, j);
    const InterferenceStats b = interference_bank(CVector(cplx(0.0, 4.0) * x), s, h, j);
    EXPECT_LT(rel_err(a.glrt_phe_i, b.glrt_phe_i), 1e-12);
    EXPECT_LT(rel_err(a.rao_phe_i, b.rao_phe_i), 1e-12);
    EXPECT_LT(rel_err(a.wald_phe_i, b.wald_phe_i), 1e-12);
}

TEST(Interference, MismatchGeometry) {
    Rng rng(55);
    const CMatrix r = build_covariance(CovarianceModel::ar1(0.9), 10);
    const CMatrix h = nominal_subspace(10, default_signal_freqs(2));
    const CMatrix j = nominal_subspace(10, default_interference_freqs(2));

    const CVector in_j = j * rng.complex_normal(2, 1);
    EXPECT_NEAR(mismatch_geometry(in_j, r, h, j).rho_eff, 0.0, 1e-9 * in_j.squaredNorm());

    // H ⊥ J after whitening: take J from the whitened orthocomplement of H.
    const CMatrix rh = linalg::hermitian_sqrt(r);
    const CMatrix t = linalg::inv_sqrt(r);
    const CMatrix jw_perp = linalg::ortho_complement_projector(CMatrix(t * h)) * rng.complex_normal(10, 2);
    const CMatrix j_perp = rh * jw_perp;
    const CVector s_in_h = h * rng.complex_normal(2, 1);
    const InterferenceGeometry g = mismatch_geometry(s_in_h, r, h, j_perp);
    const double rho = (s_in_h.adjoint() * r.inverse() * s_in_h)(0).real();
    EXPECT_LT(rel_err(g.rho_eff, rho), 1e-9);
    EXPECT_NEAR(g.delta2_i, 0.0, 1e-9 * rho);

    for (double c2 : {0.0, 0.25, 0.8, 1.0}) {
        const SignalSpec spec{9.0, c2, 17};
        const InterferenceGeometry g0 = mismatch_geometry(actual_signal(h, r, spec), r, h, CMatrix(10, 0));
        EXPECT_NEAR(g0.rho_eff, spec.rho() * c2, 1e-9 * spec.rho());
        EXPECT_NEAR(g0.delta2_i, spec.rho() * (1 - c2), 1e-9 * spec.rho());
    }
}

}  // namespace
}  // namespace adaptdet
