/**
 * @file validation.hpp
 * @brief Self-checks shared by the CLI and the acceptance binary: algebraic
 *        identities between statistics, single-bin/no-interference reductions,
 *        and Kolmogorov–Smirnov checks of the distribution constructions.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adaptdet {

struct IdentityResult {
    std::string name;
    double max_rel_error = 0.0;
    double tolerance = 0.0;
    std::size_t instances = 0;
    bool pass = true;
};

/// Relations between the point-target and interference statistics over random
/// instances with N ∈ {4,8,12}, p ∈ {1,2,3}, L = 2N.
std::vector<IdentityResult> identity_suite(std::size_t instances, std::uint64_t seed, double tol = 1e-10);

/// K = 1, q = 0, p = 1 specializations of the range-spread, direction, DOS
/// and interference banks against the point-target banks.
std::vector<IdentityResult> reduction_suite(std::size_t instances, std::uint64_t seed, double tol = 1e-12);

struct KsResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 0.0;
    std::size_t n = 0;
    bool pass = true;
};

/// Construction samples of Cχ², CF and CB against their CDFs, plus simulated
/// AED statistics (N=12, L=24, ρ=10) against CF_{N,L−N+1}(ρ). Pass means p > 0.01.
std::vector<KsResult> ks_suite(std::size_t samples, std::uint64_t seed, unsigned workers = 0);

}  // namespace adaptdet
