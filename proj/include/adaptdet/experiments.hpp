/**
 * @file experiments.hpp
 * @brief Experiment runner behind the CLI: PD grids, CFAR sweeps and the
 *        validation suites, each producing one CSV table.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adaptdet/config.hpp"
#include "adaptdet/csv.hpp"
#include "adaptdet/detector_bank.hpp"
#include "adaptdet/scenario.hpp"

namespace adaptdet {

enum class Subcommand { pd_vs_snr, pd_vs_mismatch, mesa, cfar_check, validate_dist, identities };
enum class Mode { analytic, montecarlo, both };

std::string_view subcommand_name(Subcommand s) noexcept;
Subcommand parse_subcommand(std::string_view name);
Mode parse_mode(std::string_view name);

struct ExperimentConfig {
    Subcommand subcommand = Subcommand::pd_vs_snr;
    ScenarioConfig scenario{};
    CovarianceModel covariance = CovarianceModel::ar1(0.9);
    std::vector<double> snr_db;
    std::vector<double> cos2phi;
    std::vector<DetectorId> detectors;
    std::size_t n_trials = 10000;
    std::uint64_t seed = 1;
    std::string out;  ///< empty: standard output
    Mode mode = Mode::analytic;
    unsigned workers = 0;
    /// Interference power per column (dB) added under H1 when q > 0.
    std::optional<double> inr_db;
    /// cfar-check conditions: every covariance at σ² = 1, then every PHE σ²
    /// under each covariance. The first covariance is the calibration reference.
    std::vector<CovarianceModel> cfar_covariances;
    std::vector<double> cfar_sigma2;
    std::size_t instances = 1000;  ///< identities
    std::size_t samples = 100000;  ///< validate-dist

    void validate() const;
};

/// Subcommand defaults: pd-vs-snr 0..24 dB at cos²φ = 1; pd-vs-mismatch 18 dB
/// with cos²φ 0..1 step 0.05; mesa 0..40 dB × cos²φ 0..1 (41 × 21).
ExperimentConfig default_config(Subcommand s);

/// Applies config keys (N, p, q, K, L, pfa, env, covariance, snr, cos2phi,
/// detectors, trials, seed, out, mode, workers, inr, covariances, sigma2,
/// instances, samples) on top of default_config. Error(config) on unknown keys.
ExperimentConfig config_from_map(Subcommand s, const ConfigMap& map);

struct ExperimentResult {
    Table table;
    bool ok = true;  ///< false when a validation suite reports a failure
};

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace adaptdet
