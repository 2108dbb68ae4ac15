/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss–Legendre integration on a finite interval.
 */
#pragma once

#include <functional>
#include <vector>

namespace adaptdet {

struct QuadratureOptions {
    double abs_tol = 1e-6;
    int max_depth = 40;
};

/// ∫_a^b f. Each panel compares a 15-point rule with the sum over its two
/// halves and bisects until the difference is below its share of abs_tol.
/// Interior @p breaks split [a,b] into independently refined pieces.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {}, const std::vector<double>& breaks = {});

}  // namespace adaptdet
