/**
 * @file detector_bank.hpp
 * @brief Detector identifiers and a per-realization evaluator that computes
 *        any subset of the statistics with a single whitening.
 */
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adaptdet/distributions.hpp"
#include "adaptdet/scenario.hpp"

namespace adaptdet {

enum class DetectorId {
    // adaptive subspace bank (K = 1)
    sglrt, srao, samf, asd, sabort, wsabort, dnsamf, aed,
    // rank-one bank on s = first column of H (K = 1)
    kglrt, amf, dmrao, ace, smi,
    // known-covariance references (K = 1)
    smf, mf,
    // range-spread rank-one signal, homogeneous and partially homogeneous
    gkglrt, gamf, rao_he, glrt_phe, gasd, rao_phe, wald_phe,
    // direction detection
    glrdd, amdd, snrdd, gadd,
    // double-subspace signal
    glrt_dos, rao_dos, wald_dos,
    // coherent-interference rejection (K = 1)
    glrt_he_i, ts_glrt_he_i, glrt_phe_i, rao_he_i, ts_rao_he_i, rao_phe_i, wald_he_i, wald_phe_i,
};

inline constexpr int kDetectorCount = static_cast<int>(DetectorId::wald_phe_i) + 1;

enum class DetectorGroup { subspace, rank_one, clairvoyant, distributed_he, distributed_phe, direction, dos, interference };

std::string_view detector_name(DetectorId id) noexcept;
DetectorGroup detector_group(DetectorId id) noexcept;
std::string_view group_name(DetectorGroup g) noexcept;
std::vector<DetectorId> all_detectors();
std::vector<DetectorId> detectors_in(DetectorGroup g);

/// Accepts detector names and group names ("subspace", "interference", …, "all"),
/// comma separated. Error(config) on unknown names.
std::vector<DetectorId> parse_detectors(std::string_view list);

/// Detectors whose statistic needs K = 1 test data.
bool requires_single_bin(DetectorId id) noexcept;

/// Analytic laws, when one exists. The rank-one, MF and distributed laws are
/// stated for a single steering vector and so apply only when H has one column.
std::optional<PointDetector> point_law(DetectorId id, int p) noexcept;
std::optional<DistributedDetector> distributed_law(DetectorId id, int p) noexcept;
std::optional<InterferenceDetector> interference_law(DetectorId id) noexcept;

/// Fixed structure shared by every realization of an experiment.
struct BankContext {
    CMatrix h;               ///< N×p nominal subspace; its first column is the steering vector
    CMatrix j;               ///< N×q interference subspace (q may be 0)
    CMatrix r;               ///< true covariance, used only by the known-covariance references
    int training_count = 0;  ///< L

    /// Default steering subspace/interference subspace for @p config.
    static BankContext make(const ScenarioConfig& config, const CMatrix& r);
};

class BankEvaluator {
  public:
    BankEvaluator(BankContext context, std::vector<DetectorId> detectors);

    const std::vector<DetectorId>& detectors() const noexcept { return detectors_; }
    const BankContext& context() const noexcept { return ctx_; }

    /// out[i] receives the statistic of detectors()[i].
    void evaluate(const DataSet& data, std::span<double> out) const;

  private:
    BankContext ctx_;
    std::vector<DetectorId> detectors_;
    std::vector<bool> needed_;
    CMatrix r_inv_sqrt_;
};

}  // namespace adaptdet
