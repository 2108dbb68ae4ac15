// Poisson-weighted mixtures of regularized incomplete gamma/beta functions.
// Each sum starts at the Poisson mode and walks outward with the standard
// three-term recurrences, so only the start values touch Boost.Math.
#pragma once

namespace adaptdet::series {

inline constexpr double kTailMass = 1e-12;
inline constexpr int kMaxTerms = 100000;

struct Tail {
    double lower;  ///< Σ w_j·(lower-tail value)
    double upper;  ///< Σ w_j·(upper-tail value)
};

/// Σ_j Pois(j; δ)·P(k + j, t) and its complement.
Tail gamma_mixture(double k, double delta, double t);

/// Σ_j Pois(j; δ)·I_x(a + j, b) and its complement (noncentrality on a).
Tail beta_mixture_a(double a, double b, double delta, double x);

/// Σ_j Pois(j; δ)·I_x(a, b + j) and its complement (noncentrality on b).
Tail beta_mixture_b(double a, double b, double delta, double x);

/// Σ_j Pois(j; δ)·Beta(x; a, b + j) density.
double beta_density_b(double a, double b, double delta, double x);

}  // namespace adaptdet::series
