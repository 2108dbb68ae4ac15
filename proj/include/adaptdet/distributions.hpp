/**
 * @file distributions.hpp
 * @brief Complex noncentral chi-square, F and Beta laws, their samplers, and
 *        the analytic PD/PFA/threshold computations built on them.
 *
 * Conventions: t ~ Cχ²_k(δ) iff 2t ~ χ²_{2k}(2δ). CF_{m,n}(δ) is A/B with
 * A ~ Cχ²_m(δ), B ~ Cχ²_n. CB_{a,b}(δ) is A/(A+B) with A ~ Cχ²_a and
 * B ~ Cχ²_b(δ), so noncentrality pulls the variable toward 0.
 */
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adaptdet/quadrature.hpp"
#include "adaptdet/random.hpp"

namespace adaptdet {

struct ComplexChi2Spec {
    int k = 1;
    double delta = 0.0;
};

struct ComplexFSpec {
    int m = 1;
    int n = 1;
    double delta = 0.0;
};

struct ComplexBetaSpec {
    int a = 1;
    int b = 1;
    double delta = 0.0;
};

double cchi2_cdf(const ComplexChi2Spec& spec, double t);
double cchi2_sf(const ComplexChi2Spec& spec, double t);
double cchi2_sample(const ComplexChi2Spec& spec, Rng& rng);

double cf_cdf(const ComplexFSpec& spec, double t);
double cf_sf(const ComplexFSpec& spec, double t);
double cf_sample(const ComplexFSpec& spec, Rng& rng);

double cbeta_cdf(const ComplexBetaSpec& spec, double beta);
double cbeta_pdf(const ComplexBetaSpec& spec, double beta);
double cbeta_sample(const ComplexBetaSpec& spec, Rng& rng);

enum class PointDetector { sglrt, srao, samf, asd, sabort, wsabort, dnsamf, aed, smf };
enum class DistributedDetector { gkglrt, gamf };
enum class InterferenceDetector { glrt_he_i, ts_glrt_he_i, glrt_phe_i };

struct PdOptions {
    QuadratureOptions quad{};
    /// AED through the integration-free CF_{N,L−N+1}(ρ) law; false integrates
    /// the generic conditional form instead.
    bool aed_closed_form = true;
};

double pd_point(PointDetector det, int n, int p, int l, double rho, double cos2phi, double eta,
                const PdOptions& opts = {});
double pfa_point(PointDetector det, int n, int p, int l, double eta, const PdOptions& opts = {});
double threshold_for_pfa(PointDetector det, int n, int p, int l, double pfa);

double pd_distributed(DistributedDetector det, int n, int k, int l, double rho, double cos2phi,
                      double eta, const PdOptions& opts = {});
double pfa_distributed(DistributedDetector det, int n, int k, int l, double eta,
                       const PdOptions& opts = {});
double threshold_distributed(DistributedDetector det, int n, int k, int l, double pfa);

double pd_interference(InterferenceDetector det, int n, int p, int q, int l, double rho_eff,
                       double delta2_i, double eta, const PdOptions& opts = {});
double pfa_interference(InterferenceDetector det, int n, int p, int q, int l, double eta,
                        const PdOptions& opts = {});
double threshold_interference(InterferenceDetector det, int n, int p, int q, int l, double pfa);

/// Smallest η > 0 with pfa(η) within 1e-3·target of @p target, by bisection
/// on a strictly decreasing PFA curve. Error(domain) if it cannot be bracketed.
double invert_pfa(const std::function<double(double)>& pfa_of_eta, double target);

/// sup |F_n − F| for the empirical distribution of @p samples (sorted in place).
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov p-value with Stephens' small-sample correction.
double ks_pvalue(double d, std::size_t n);

}  // namespace adaptdet
