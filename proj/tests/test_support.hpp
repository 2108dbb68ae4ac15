// Random instances shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <complex>

#include "adaptdet/random.hpp"
#include "adaptdet/types.hpp"

namespace adaptdet::testing {

inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    return rng.complex_normal(rows, cols);
}

/// Well-conditioned Hermitian PD matrix AAᴴ/n + 0.5·I.
inline CMatrix random_hpd(Rng& rng, Eigen::Index n) {
    const CMatrix a = rng.complex_normal(n, n);
    CMatrix s = a * a.adjoint() / double(n) + 0.5 * CMatrix::Identity(n, n);
    return 0.5 * (s + s.adjoint());
}

/// SCM of 2n white training columns, the shape detectors see in practice.
inline CMatrix random_scm(Rng& rng, Eigen::Index n) {
    const CMatrix x = rng.complex_normal(n, 2 * n);
    return x * x.adjoint();
}

inline double rel_err(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel_err(const CMatrix& a, const CMatrix& b) {
    const double s = std::max(a.norm(), b.norm());
    return s == 0.0 ? 0.0 : (a - b).norm() / s;
}

}  // namespace adaptdet::testing
