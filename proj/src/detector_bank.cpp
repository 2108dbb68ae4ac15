#include "adaptdet/detector_bank.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "adaptdet/detectors_distributed.hpp"
#include "adaptdet/detectors_interference.hpp"
#include "adaptdet/detectors_point.hpp"
#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"

namespace adaptdet {
namespace {

constexpr std::array<std::string_view, kDetectorCount> kNames = {
    "sglrt",     "srao",        "samf",       "asd",      "sabort",      "wsabort",   "dnsamf",
    "aed",       "kglrt",       "amf",        "dmrao",    "ace",         "smi",       "smf",
    "mf",        "gkglrt",      "gamf",       "rao_he",   "glrt_phe",    "gasd",      "rao_phe",
    "wald_phe",  "glrdd",       "amdd",       "snrdd",    "gadd",        "glrt_dos",  "rao_dos",
    "wald_dos",  "glrt_he_i",   "ts_glrt_he_i", "glrt_phe_i", "rao_he_i", "ts_rao_he_i", "rao_phe_i",
    "wald_he_i", "wald_phe_i"};

constexpr std::array<std::string_view, 8> kGroupNames = {
    "subspace", "rank_one", "clairvoyant", "distributed_he", "distributed_phe", "direction", "dos", "interference"};

int idx(DetectorId id) { return static_cast<int>(id); }

bool any_in(const std::vector<bool>& needed, DetectorGroup g) {
    for (int i = 0; i < kDetectorCount; ++i)
        if (needed[static_cast<std::size_t>(i)] && detector_group(static_cast<DetectorId>(i)) == g) return true;
    return false;
}

}  // namespace

std::string_view detector_name(DetectorId id) noexcept { return kNames[static_cast<std::size_t>(idx(id))]; }

DetectorGroup detector_group(DetectorId id) noexcept {
    const int i = idx(id);
    if (i <= idx(DetectorId::aed)) return DetectorGroup::subspace;
    if (i <= idx(DetectorId::smi)) return DetectorGroup::rank_one;
    if (i <= idx(DetectorId::mf)) return DetectorGroup::clairvoyant;
    if (i <= idx(DetectorId::rao_he)) return DetectorGroup::distributed_he;
    if (i <= idx(DetectorId::wald_phe)) return DetectorGroup::distributed_phe;
    if (i <= idx(DetectorId::gadd)) return DetectorGroup::direction;
    if (i <= idx(DetectorId::wald_dos)) return DetectorGroup::dos;
    return DetectorGroup::interference;
}

std::string_view group_name(DetectorGroup g) noexcept { return kGroupNames[static_cast<std::size_t>(g)]; }

std::vector<DetectorId> all_detectors() {
    std::vector<DetectorId> out;
    for (int i = 0; i < kDetectorCount; ++i) out.push_back(static_cast<DetectorId>(i));
    return out;
}

std::vector<DetectorId> detectors_in(DetectorGroup g) {
    std::vector<DetectorId> out;
    for (DetectorId id : all_detectors())
        if (detector_group(id) == g) out.push_back(id);
    return out;
}

std::vector<DetectorId> parse_detectors(std::string_view list) {
    std::vector<DetectorId> out;
    auto add = [&](DetectorId id) {
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    std::stringstream ss{std::string(list)};
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, e - b + 1);
        if (item == "all") {
            for (DetectorId id : all_detectors()) add(id);
            continue;
        }
        bool found = false;
        for (int g = 0; g < static_cast<int>(kGroupNames.size()); ++g) {
            if (item == kGroupNames[static_cast<std::size_t>(g)]) {
                for (DetectorId id : detectors_in(static_cast<DetectorGroup>(g))) add(id);
                found = true;
            }
        }
        for (int i = 0; i < kDetectorCount && !found; ++i) {
            if (item == kNames[static_cast<std::size_t>(i)]) {
                add(static_cast<DetectorId>(i));
                found = true;
            }
        }
        if (!found) throw Error(ErrorKind::config, "unknown detector '" + item + "'");
    }
    if (out.empty()) throw Error(ErrorKind::config, "empty detector list");
    return out;
}

bool requires_single_bin(DetectorId id) noexcept {
    switch (detector_group(id)) {
        case DetectorGroup::subspace:
        case DetectorGroup::rank_one:
        case DetectorGroup::clairvoyant:
        case DetectorGroup::interference: return true;
        default: return false;
    }
}

std::optional<PointDetector> point_law(DetectorId id, int p) noexcept {
    switch (id) {
        case DetectorId::sglrt: return PointDetector::sglrt;
        case DetectorId::srao: return PointDetector::srao;
        case DetectorId::samf: return PointDetector::samf;
        case DetectorId::asd: return PointDetector::asd;
        case DetectorId::sabort: return PointDetector::sabort;
        case DetectorId::wsabort: return PointDetector::wsabort;
        case DetectorId::dnsamf: return PointDetector::dnsamf;
        case DetectorId::aed: return PointDetector::aed;
        case DetectorId::smf: return PointDetector::smf;
        default: break;
    }
    if (p != 1) return std::nullopt;
    switch (id) {
        case DetectorId::kglrt: return PointDetector::sglrt;
        case DetectorId::amf: return PointDetector::samf;
        case DetectorId::dmrao: return PointDetector::srao;
        case DetectorId::ace: return PointDetector::asd;
        case DetectorId::mf: return PointDetector::smf;
        default: return std::nullopt;
    }
}

std::optional<DistributedDetector> distributed_law(DetectorId id, int p) noexcept {
    if (p != 1) return std::nullopt;
    if (id == DetectorId::gkglrt) return DistributedDetector::gkglrt;
    if (id == DetectorId::gamf) return DistributedDetector::gamf;
    return std::nullopt;
}

std::optional<InterferenceDetector> interference_law(DetectorId id) noexcept {
    if (id == DetectorId::glrt_he_i) return InterferenceDetector::glrt_he_i;
    if (id == DetectorId::ts_glrt_he_i) return InterferenceDetector::ts_glrt_he_i;
    if (id == DetectorId::glrt_phe_i) return InterferenceDetector::glrt_phe_i;
    return std::nullopt;
}

BankContext BankContext::make(const ScenarioConfig& config, const CMatrix& r) {
    config.validate();
    BankContext ctx;
    ctx.h = nominal_subspace(config.N, default_signal_freqs(config.p));
    ctx.j = config.q > 0 ? nominal_subspace(config.N, default_interference_freqs(config.q)) : CMatrix(config.N, 0);
    ctx.r = r;
    ctx.training_count = config.L;
    return ctx;
}

BankEvaluator::BankEvaluator(BankContext context, std::vector<DetectorId> detectors)
    : ctx_(std::move(context)), detectors_(std::move(detectors)), needed_(kDetectorCount, false) {
    if (detectors_.empty()) throw Error(ErrorKind::parameter, "no detectors requested");
    if (ctx_.h.cols() < 1) throw Error(ErrorKind::parameter, "nominal subspace is empty");
    for (DetectorId id : detectors_) needed_[static_cast<std::size_t>(idx(id))] = true;
    if (any_in(needed_, DetectorGroup::clairvoyant)) r_inv_sqrt_ = linalg::inv_sqrt(ctx_.r);
}

void BankEvaluator::evaluate(const DataSet& data, std::span<double> out) const {
    if (out.size() != detectors_.size()) throw Error(ErrorKind::dimension, "output span size mismatch");
    std::array<double, kDetectorCount> v{};
    const bool single = data.test.cols() == 1;
    for (DetectorId id : detectors_) {
        if (requires_single_bin(id) && !single) {
            throw Error(ErrorKind::parameter, std::string(detector_name(id)) + " needs K = 1 test data");
        }
    }

    const linalg::Whitener white(data.scm);
    const CMatrix xw = white(data.test);
    const CMatrix hw = white(ctx_.h);
    const CVector sw = hw.col(0);

    if (any_in(needed_, DetectorGroup::subspace)) {
        const PointStats st = subspace_stats(xw.col(0), linalg::orthonormal_basis(hw));
        v[idx(DetectorId::sglrt)] = st.sglrt;
        v[idx(DetectorId::srao)] = st.srao;
        v[idx(DetectorId::samf)] = st.samf;
        v[idx(DetectorId::asd)] = st.asd;
        v[idx(DetectorId::sabort)] = st.sabort;
        v[idx(DetectorId::wsabort)] = st.wsabort;
        v[idx(DetectorId::dnsamf)] = st.dnsamf;
        v[idx(DetectorId::aed)] = st.aed;
    }
    if (any_in(needed_, DetectorGroup::rank_one)) {
        const CVector x0 = xw.col(0);
        const PointStats st = subspace_stats(x0, linalg::orthonormal_basis(sw));
        v[idx(DetectorId::kglrt)] = st.sglrt;
        v[idx(DetectorId::amf)] = st.samf;
        v[idx(DetectorId::dmrao)] = st.srao;
        v[idx(DetectorId::ace)] = st.asd;
        const double ss = kernels::norm2(sw);
        v[idx(DetectorId::smi)] = std::norm(kernels::dotc(sw, x0)) / (ss * ss);
    }
    if (any_in(needed_, DetectorGroup::clairvoyant)) {
        const CVector xr = r_inv_sqrt_ * data.test.col(0);
        const CMatrix hr = r_inv_sqrt_ * ctx_.h;
        v[idx(DetectorId::smf)] = subspace_stats(xr, linalg::orthonormal_basis(hr)).samf;
        const CVector sr = hr.col(0);
        const double ss = kernels::norm2(sr);
        v[idx(DetectorId::mf)] = std::norm(kernels::dotc(sr, xr)) / (ss * ss);
    }
    if (any_in(needed_, DetectorGroup::distributed_he)) {
        const DistributedHeStats st = distributed_he_stats(xw, sw);
        v[idx(DetectorId::gkglrt)] = st.gkglrt;
        v[idx(DetectorId::gamf)] = st.gamf;
        v[idx(DetectorId::rao_he)] = st.rao_he;
    }
    if (any_in(needed_, DetectorGroup::distributed_phe)) {
        const DistributedPheStats st = distributed_phe_stats(xw, sw, ctx_.training_count);
        v[idx(DetectorId::glrt_phe)] = st.glrt_phe;
        v[idx(DetectorId::gasd)] = st.gasd;
        v[idx(DetectorId::rao_phe)] = st.rao_phe;
        v[idx(DetectorId::wald_phe)] = st.wald_phe;
    }
    if (any_in(needed_, DetectorGroup::direction)) {
        const DirectionStats st = direction_stats(xw, hw);
        v[idx(DetectorId::glrdd)] = st.glrdd;
        v[idx(DetectorId::amdd)] = st.amdd;
        v[idx(DetectorId::snrdd)] = st.snrdd;
        v[idx(DetectorId::gadd)] = st.gadd;
    }
    if (any_in(needed_, DetectorGroup::dos)) {
        const DosStats st = dos_stats(xw, hw);
        v[idx(DetectorId::glrt_dos)] = st.glrt_dos;
        v[idx(DetectorId::rao_dos)] = st.rao_dos;
        v[idx(DetectorId::wald_dos)] = st.wald_dos;
    }
    if (any_in(needed_, DetectorGroup::interference)) {
        const InterferenceStats st = interference_stats(xw.col(0), hw, white(ctx_.j));
        v[idx(DetectorId::glrt_he_i)] = st.glrt_he_i;
        v[idx(DetectorId::ts_glrt_he_i)] = st.ts_glrt_he_i;
        v[idx(DetectorId::glrt_phe_i)] = st.glrt_phe_i;
        v[idx(DetectorId::rao_he_i)] = st.rao_he_i;
        v[idx(DetectorId::ts_rao_he_i)] = st.ts_rao_he_i;
        v[idx(DetectorId::rao_phe_i)] = st.rao_phe_i;
        v[idx(DetectorId::wald_he_i)] = st.wald_he_i;
        v[idx(DetectorId::wald_phe_i)] = st.wald_phe_i;
    }
    for (std::size_t i = 0; i < detectors_.size(); ++i) out[i] = v[static_cast<std::size_t>(idx(detectors_[i]))];
}

}  // namespace adaptdet
