/**
 * @file scenario.hpp
 * @brief Covariance models, steering subspaces, mismatched signals and
 *        Gaussian data synthesis for both hypotheses.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adaptdet/random.hpp"
#include "adaptdet/types.hpp"

namespace adaptdet {

struct CovarianceModel {
    enum class Kind { identity, ar1, ar1_plus_white };

    Kind kind = Kind::identity;
    double rho_c = 0.0;   ///< one-lag correlation, [0,1)
    double cnr_db = 0.0;  ///< clutter-to-noise ratio for ar1_plus_white

    static CovarianceModel identity() { return {}; }
    static CovarianceModel ar1(double rho) { return {Kind::ar1, rho, 0.0}; }
    static CovarianceModel ar1_plus_white(double rho, double cnr) {
        return {Kind::ar1_plus_white, rho, cnr};
    }

    /// "identity", "ar1:0.9", "ar1_plus_white:0.99:30"
    std::string name() const;
    static CovarianceModel parse(const std::string& text);
};

/// R[i][j] = ρ_c^|i−j| (ar1); cnr·AR1 + I (ar1_plus_white).
CMatrix build_covariance(const CovarianceModel& model, int n);

enum class Environment { he, phe };

struct ScenarioConfig {
    int N = 12;
    int p = 2;
    int q = 0;
    int K = 1;
    int L = 24;
    Environment environment = Environment::he;
    double sigma2 = 1.0;  ///< test-data power scale in PHE
    double pfa = 1e-3;

    /// Throws Error(parameter) or Error(insufficient_training).
    void validate() const;
    /// σ² actually applied to the test data (1 in HE).
    double test_scale() const { return environment == Environment::phe ? sigma2 : 1.0; }
};

/// v(f) = [1, e^{j2πf}, …, e^{j2πf(N−1)}]ᵀ
CVector steering_vector(int n, double f);

/// Columns v(f_k). Error(rank) on duplicate or aliased frequencies.
CMatrix nominal_subspace(int n, const std::vector<double>& freqs);

/// f_k = (k+1)/(2(p+1)), k = 0..p−1
std::vector<double> default_signal_freqs(int p);
/// f_k = 0.5 + (k+1)/(2(q+1)), k = 0..q−1
std::vector<double> default_interference_freqs(int q);

struct SignalSpec {
    double snr_db = 0.0;
    double cos2phi = 1.0;
    std::uint64_t seed = 0;

    double rho() const;
};

/// s₀ with s₀ᴴR⁻¹s₀ = ρ and whitened cos²φ to span(R^{-1/2}H) as requested.
/// The in-subspace and orthogonal directions are drawn from @p rng.
CVector actual_signal(const CMatrix& h, const CMatrix& r, const SignalSpec& spec, Rng& rng);

/// Same, seeding a fresh stream from spec.seed.
CVector actual_signal(const CMatrix& h, const CMatrix& r, const SignalSpec& spec);

struct DataSet {
    CMatrix test;      ///< N×K
    CMatrix training;  ///< N×L
    CMatrix scm;       ///< training·trainingᴴ
};

/// Deterministic H1 mean s₀aᴴ (a defaults to all ones, length K).
struct SignalModel {
    CVector s0;
    CVector a;
};

/// Coherent interference Jφ added under H1; phi is q×K (or q×1, repeated).
struct InterferenceModel {
    CMatrix j;
    CMatrix phi;
};

/// Reusable draw engine: holds R^{1/2} so repeated draws skip the factorization.
class Synthesizer {
  public:
    Synthesizer(const ScenarioConfig& config, const CMatrix& r);

    DataSet draw(Hypothesis hyp, const SignalModel* signal, const InterferenceModel* interference,
                 Rng& rng) const;

    const CMatrix& covariance() const noexcept { return r_; }
    const CMatrix& covariance_sqrt() const noexcept { return r_sqrt_; }
    const ScenarioConfig& config() const noexcept { return config_; }

  private:
    ScenarioConfig config_;
    CMatrix r_;
    CMatrix r_sqrt_;
};

DataSet synthesize(const ScenarioConfig& config, const CovarianceModel& model,
                   const std::optional<SignalModel>& signal,
                   const std::optional<InterferenceModel>& interference, Hypothesis hyp,
                   std::uint64_t seed);

}  // namespace adaptdet
