/**
 * @file montecarlo.hpp
 * @brief Seeded trial engine: threshold calibration, PD estimation with
 *        Wilson intervals, CFAR sweeps and decision-set invariance checks.
 *
 * Trial i draws from an RNG seeded by stream_seed(master_seed, i), so every
 * result is a pure function of the plan whatever the worker count.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adaptdet/detector_bank.hpp"
#include "adaptdet/scenario.hpp"

namespace adaptdet {

/// two-sided 99% normal quantile
inline constexpr double kZ99 = 2.5758293035489004;

struct TrialPlan {
    std::size_t n_trials = 10000;
    std::uint64_t master_seed = 1;
    ScenarioConfig scenario{};
    CovarianceModel covariance = CovarianceModel::ar1(0.9);
    std::vector<DetectorId> detectors;
    Hypothesis hypothesis = Hypothesis::h0;
    /// H1 signal; s₀ comes from actual_signal against the context's H, with
    /// range-bin coordinates a = 1/√K so that the output SNR is s₀ᴴR⁻¹s₀.
    std::optional<SignalSpec> signal;
    /// Per-column whitened interference power (dB) added under H1 when q > 0.
    std::optional<double> inr_db;
    /// Subspaces override; defaults from BankContext::make.
    std::optional<CMatrix> h;
    std::optional<CMatrix> j;
    unsigned workers = 0;  ///< 0 = hardware concurrency
};

struct PdEstimate {
    double pd = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::size_t n = 0;
    std::size_t count = 0;
};

/// Wilson score interval for @p count successes out of @p n.
PdEstimate wilson(std::size_t count, std::size_t n, double z = kZ99);

/// Statistics of every plan detector over every trial: row-major, one row per
/// trial, columns in plan.detectors order.
struct StatTable {
    std::vector<DetectorId> detectors;
    std::size_t n_trials = 0;
    std::vector<double> values;

    std::vector<double> column(std::size_t d) const;
    std::vector<double> column(DetectorId id) const;
};

/// Context (H, J, R) a plan runs against.
BankContext plan_context(const TrialPlan& plan);

/// Deterministic H1 signal vector of a plan (empty when the plan has none).
CVector plan_signal(const TrialPlan& plan, const BankContext& ctx);

StatTable run_trials(const TrialPlan& plan);

/// ⌈n·pfa⌉-th largest value; decisions use strict >. Error(insufficient_trials) if n·pfa < 1.
double threshold_from_samples(std::vector<double> values, double pfa);

double calibrate_threshold(const TrialPlan& plan, DetectorId det);

PdEstimate estimate_from_samples(const std::vector<double>& values, double threshold);

PdEstimate estimate_pd(const TrialPlan& plan, DetectorId det, double threshold);

struct CfarCondition {
    CovarianceModel covariance;
    double sigma2 = 1.0;  ///< PHE test-data scale; 1 is homogeneous
    std::string label() const;
};

struct CfarEntry {
    DetectorId detector;
    CfarCondition condition;
    double threshold = 0.0;
    PdEstimate pfa;
    bool pass = true;  ///< PFA inside the reference condition's Wilson interval
};

struct CfarReport {
    std::vector<CfarEntry> entries;
    bool detector_passes(DetectorId id) const;
    /// PFA(condition b)/PFA(condition a) for @p id.
    double pfa_ratio(DetectorId id, std::size_t a, std::size_t b) const;
};

/// Empirical PFA of each detector under every condition, evaluated on one
/// common trial stream (seed) at fixed thresholds. Condition 0 is the reference.
CfarReport cfar_sweep(const TrialPlan& base, const std::vector<CfarCondition>& conditions,
                      const std::vector<double>& thresholds);

/// Number of trials whose decisions differ between (stat > η) and (g(stat) > g(η)).
/// Error(contract) if g is found decreasing on the sampled statistics.
std::size_t roc_invariance_mismatches(const TrialPlan& plan, DetectorId det,
                                      const std::function<double(double)>& g, double eta);

bool roc_invariance_check(const TrialPlan& plan, DetectorId det, const std::function<double(double)>& g,
                          double eta);

/// Trials where (a > η_a) and (b > η_b) disagree on the same realizations.
std::size_t decision_mismatches(const TrialPlan& plan, DetectorId a, double eta_a, DetectorId b,
                                double eta_b);

}  // namespace adaptdet
