#include "adaptdet/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"
#include "adaptdet/random.hpp"

namespace adaptdet {
namespace {

constexpr std::size_t kChunk = 256;

unsigned worker_count(unsigned requested, std::size_t n) {
    unsigned w = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, chunks)));
}

}  // namespace

PdEstimate wilson(std::size_t count, std::size_t n, double z) {
    PdEstimate e;
    e.n = n;
    e.count = count;
    if (n == 0) return e;
    const double nn = static_cast<double>(n);
    const double ph = static_cast<double>(count) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (ph + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    e.pd = ph;
    e.ci_low = std::max(0.0, std::min(ph, centre - half));
    e.ci_high = std::min(1.0, std::max(ph, centre + half));
    return e;
}

std::vector<double> StatTable::column(std::size_t d) const {
    std::vector<double> out(n_trials);
    const std::size_t stride = detectors.size();
    for (std::size_t i = 0; i < n_trials; ++i) out[i] = values[i * stride + d];
    return out;
}

std::vector<double> StatTable::column(DetectorId id) const {
    const auto it = std::find(detectors.begin(), detectors.end(), id);
    if (it == detectors.end()) throw Error(ErrorKind::parameter, "detector not in table");
    return column(static_cast<std::size_t>(it - detectors.begin()));
}

BankContext plan_context(const TrialPlan& plan) {
    BankContext ctx = BankContext::make(plan.scenario, build_covariance(plan.covariance, plan.scenario.N));
    if (plan.h) ctx.h = *plan.h;
    if (plan.j) ctx.j = *plan.j;
    return ctx;
}

CVector plan_signal(const TrialPlan& plan, const BankContext& ctx) {
    if (!plan.signal) return CVector();
    return actual_signal(ctx.h, ctx.r, *plan.signal);
}

StatTable run_trials(const TrialPlan& plan) {
    plan.scenario.validate();
    if (plan.n_trials == 0) throw Error(ErrorKind::parameter, "plan needs at least one trial");
    const BankContext ctx = plan_context(plan);
    const BankEvaluator eval(ctx, plan.detectors);
    const Synthesizer synth(plan.scenario, ctx.r);

    std::optional<SignalModel> signal;
    std::optional<InterferenceModel> interference;
    if (plan.hypothesis == Hypothesis::h1) {
        if (plan.signal) {
            const int k = plan.scenario.K;
            signal = SignalModel{plan_signal(plan, ctx), CVector::Constant(k, cplx(1.0 / std::sqrt(double(k)), 0.0))};
        }
        if (plan.inr_db && ctx.j.cols() > 0) {
            const CMatrix jw = linalg::inv_sqrt(ctx.r) * ctx.j;
            const double inr = std::pow(10.0, *plan.inr_db / 10.0);
            CMatrix phi(ctx.j.cols(), 1);
            for (Eigen::Index c = 0; c < ctx.j.cols(); ++c) phi(c, 0) = std::sqrt(inr / jw.col(c).squaredNorm());
            interference = InterferenceModel{ctx.j, phi};
        }
    }

    StatTable table;
    table.detectors = plan.detectors;
    table.n_trials = plan.n_trials;
    table.values.assign(plan.n_trials * plan.detectors.size(), 0.0);
    const std::size_t stride = plan.detectors.size();

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (;;) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= plan.n_trials) break;
                const std::size_t end = std::min(plan.n_trials, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i) {
                    Rng rng(stream_seed(plan.master_seed, i));
                    const DataSet d = synth.draw(plan.hypothesis, signal ? &*signal : nullptr,
                                                 interference ? &*interference : nullptr, rng);
                    eval.evaluate(d, std::span<double>(table.values.data() + i * stride, stride));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(plan.n_trials);
        }
    };
    const unsigned workers = worker_count(plan.workers, plan.n_trials);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

double threshold_from_samples(std::vector<double> values, double pfa) {
    if (!(pfa > 0.0 && pfa < 1.0)) throw Error(ErrorKind::parameter, "pfa must lie in (0,1)");
    const double expected = static_cast<double>(values.size()) * pfa;
    if (expected < 1.0) {
        throw Error(ErrorKind::insufficient_trials, "n*pfa < 1: too few trials for the target PFA");
    }
    const auto rank = static_cast<std::size_t>(std::ceil(expected - 1e-9));
    // rank-th largest = element (n − rank) in ascending order
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(values.size() - rank);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
}

double calibrate_threshold(const TrialPlan& plan, DetectorId det) {
    TrialPlan h0 = plan;
    h0.hypothesis = Hypothesis::h0;
    h0.detectors = {det};
    return threshold_from_samples(run_trials(h0).column(0), plan.scenario.pfa);
}

PdEstimate estimate_from_samples(const std::vector<double>& values, double threshold) {
    return wilson(kernels::count_greater(values, threshold), values.size());
}

PdEstimate estimate_pd(const TrialPlan& plan, DetectorId det, double threshold) {
    TrialPlan p = plan;
    p.detectors = {det};
    return estimate_from_samples(run_trials(p).column(0), threshold);
}

std::string CfarCondition::label() const {
    std::string s = covariance.name();
    if (sigma2 != 1.0) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", sigma2);
        s += "/phe:" + std::string(buf);
    }
    return s;
}

bool CfarReport::detector_passes(DetectorId id) const {
    for (const auto& e : entries)
        if (e.detector == id && !e.pass) return false;
    return true;
}

double CfarReport::pfa_ratio(DetectorId id, std::size_t a, std::size_t b) const {
    std::vector<const CfarEntry*> mine;
    for (const auto& e : entries)
        if (e.detector == id) mine.push_back(&e);
    if (a >= mine.size() || b >= mine.size()) throw Error(ErrorKind::parameter, "condition index out of range");
    return mine[b]->pfa.pd / mine[a]->pfa.pd;
}

CfarReport cfar_sweep(const TrialPlan& base, const std::vector<CfarCondition>& conditions,
                      const std::vector<double>& thresholds) {
    if (conditions.empty()) throw Error(ErrorKind::parameter, "cfar_sweep needs at least one condition");
    if (thresholds.size() != base.detectors.size()) {
        throw Error(ErrorKind::parameter, "one threshold per detector required");
    }
    std::vector<StatTable> tables;
    for (const CfarCondition& c : conditions) {
        TrialPlan p = base;
        p.hypothesis = Hypothesis::h0;
        p.covariance = c.covariance;
        p.scenario.environment = c.sigma2 == 1.0 ? Environment::he : Environment::phe;
        p.scenario.sigma2 = c.sigma2;
        tables.push_back(run_trials(p));
    }
    CfarReport report;
    for (std::size_t d = 0; d < base.detectors.size(); ++d) {
        const PdEstimate ref = estimate_from_samples(tables[0].column(d), thresholds[d]);
        for (std::size_t c = 0; c < conditions.size(); ++c) {
            CfarEntry e{base.detectors[d], conditions[c], thresholds[d],
                        estimate_from_samples(tables[c].column(d), thresholds[d]), true};
            e.pass = e.pfa.pd >= ref.ci_low && e.pfa.pd <= ref.ci_high;
            report.entries.push_back(e);
        }
    }
    return report;
}

std::size_t roc_invariance_mismatches(const TrialPlan& plan, DetectorId det,
                                      const std::function<double(double)>& g, double eta) {
    TrialPlan p = plan;
    p.detectors = {det};
    std::vector<double> stats = run_trials(p).column(0);
    std::vector<double> sorted = stats;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t step = std::max<std::size_t>(1, sorted.size() / 1000);
    for (std::size_t i = step; i < sorted.size(); i += step) {
        if (sorted[i] > sorted[i - step] && g(sorted[i]) < g(sorted[i - step])) {
            throw Error(ErrorKind::contract, "map is not increasing on the statistic's range");
        }
    }
    const double g_eta = g(eta);
    std::size_t mismatches = 0;
    for (double t : stats) mismatches += (t > eta) != (g(t) > g_eta) ? 1 : 0;
    return mismatches;
}

bool roc_invariance_check(const TrialPlan& plan, DetectorId det, const std::function<double(double)>& g,
                          double eta) {
    return roc_invariance_mismatches(plan, det, g, eta) == 0;
}

std::size_t decision_mismatches(const TrialPlan& plan, DetectorId a, double eta_a, DetectorId b,
                                double eta_b) {
    TrialPlan p = plan;
    p.detectors = {a, b};
    const StatTable t = run_trials(p);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < t.n_trials; ++i) {
        mismatches += (t.values[2 * i] > eta_a) != (t.values[2 * i + 1] > eta_b) ? 1 : 0;
    }
    return mismatches;
}

}  // namespace adaptdet
