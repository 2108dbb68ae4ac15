#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "adaptdet/distributions.hpp"
#include "adaptdet/error.hpp"
#include "adaptdet/montecarlo.hpp"

namespace adaptdet {
namespace {

TrialPlan small_plan(std::vector<DetectorId> ids, std::size_t n = 2000) {
    TrialPlan p;
    p.n_trials = n;
    p.master_seed = 77;
    p.detectors = std::move(ids);
    p.workers = 2;
    return p;
}

TEST(MonteCarlo, UniformOrderStatistic) {
    Rng rng(71);
    const std::size_t n = 100000;
    const double pfa = 1e-2;
    std::vector<double> u(n);
    for (auto& v : u) v = rng.uniform();
    const double t = threshold_from_samples(u, pfa);
    EXPECT_NEAR(t, 1.0 - pfa, 3.0 * std::sqrt(pfa / n));
    // Exactly ⌈n·pfa⌉ samples sit at or above the threshold, one fewer strictly above.
    EXPECT_EQ(estimate_from_samples(u, t).count, static_cast<std::size_t>(std::ceil(n * pfa)) - 1);
    try {
        threshold_from_samples(std::vector<double>(99, 0.0), 1e-3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::insufficient_trials);
    }
}

TEST(MonteCarlo, WilsonInterval) {
    const PdEstimate z = wilson(0, 100);
    EXPECT_EQ(z.pd, 0.0);
    EXPECT_EQ(z.ci_low, 0.0);
    EXPECT_GT(z.ci_high, 0.0);
    const PdEstimate o = wilson(100, 100);
    EXPECT_NEAR(o.ci_high, 1.0, 1e-15);
    // Direct Wilson formula at k = 30, n = 200.
    const double p = 0.15, n = 200, zz = kZ99;
    const double c = (p + zz * zz / (2 * n)) / (1 + zz * zz / n);
    const double h = zz / (1 + zz * zz / n) * std::sqrt(p * (1 - p) / n + zz * zz / (4 * n * n));
    const PdEstimate w = wilson(30, 200);
    EXPECT_NEAR(w.ci_low, c - h, 1e-14);
    EXPECT_NEAR(w.ci_high, c + h, 1e-14);
    const PdEstimate w2 = wilson(60, 400);
    EXPECT_NEAR((w2.ci_high - w2.ci_low) / (w.ci_high - w.ci_low), 1 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
}

TEST(MonteCarlo, DeterministicAndWorkerIndependent) {
    TrialPlan a = small_plan({DetectorId::sglrt, DetectorId::smi, DetectorId::aed});
    a.workers = 1;
    TrialPlan b = a;
    b.workers = 3;
    const StatTable ta = run_trials(a), tb = run_trials(b), tc = run_trials(a);
    EXPECT_EQ(ta.values, tb.values);
    EXPECT_EQ(ta.values, tc.values);
    TrialPlan d = a;
    d.master_seed = 78;
    EXPECT_NE(run_trials(d).values, ta.values);
    const double t1 = calibrate_threshold(a, DetectorId::sglrt);
    const double t2 = calibrate_threshold(b, DetectorId::sglrt);
    EXPECT_EQ(std::memcmp(&t1, &t2, sizeof t1), 0);
}

TEST(MonteCarlo, CalibratedThresholdHoldsOut) {
    TrialPlan cal = small_plan({DetectorId::kglrt}, 20000);
    cal.scenario.pfa = 1e-2;
    const double eta = calibrate_threshold(cal, DetectorId::kglrt);
    TrialPlan fresh = cal;
    fresh.master_seed = 78;
    const PdEstimate e = estimate_pd(fresh, DetectorId::kglrt, eta);
    EXPECT_LE(e.ci_low, 1e-2);
    EXPECT_GE(e.ci_high, 1e-2);
}

TEST(MonteCarlo, PfaAtAnalyticThresholdConverges) {
    TrialPlan plan = small_plan({DetectorId::sglrt}, 20000);
    const double pfa = 1e-2;
    const double eta = threshold_for_pfa(PointDetector::sglrt, 12, 2, 24, pfa);
    const PdEstimate e = estimate_pd(plan, DetectorId::sglrt, eta);
    EXPECT_LE(std::abs(e.pd - pfa), 3.0 * std::sqrt(pfa * (1 - pfa) / plan.n_trials));
}

TEST(MonteCarlo, ThresholdBelowSupportGivesOne) {
    const TrialPlan plan = small_plan({DetectorId::samf}, 500);
    EXPECT_EQ(estimate_pd(plan, DetectorId::samf, -1.0).pd, 1.0);
}

TEST(MonteCarlo, SmfMatchesChiSquareLaw) {
    TrialPlan plan = small_plan({DetectorId::smf}, 10000);
    plan.hypothesis = Hypothesis::h1;
    plan.signal = SignalSpec{8.0, 1.0, 3};
    const double eta = 9.0;
    const PdEstimate e = estimate_pd(plan, DetectorId::smf, eta);
    const double pd = cchi2_sf({2, plan.signal->rho()}, eta);
    EXPECT_GE(pd, e.ci_low);
    EXPECT_LE(pd, e.ci_high);
}

TEST(MonteCarlo, CfarSweepSeparatesCfarFromSmi) {
    TrialPlan base = small_plan({DetectorId::kglrt, DetectorId::asd, DetectorId::smi}, 20000);
    base.scenario.pfa = 1e-2;
    base.covariance = CovarianceModel::identity();
    const StatTable h0 = run_trials(base);
    std::vector<double> th;
    for (std::size_t d = 0; d < 3; ++d) th.push_back(threshold_from_samples(h0.column(d), 1e-2));
    TrialPlan sweep = base;
    sweep.master_seed = 79;
    const std::vector<CfarCondition> conds = {{CovarianceModel::identity(), 1.0},
                                              {CovarianceModel::ar1(0.9), 1.0},
                                              {CovarianceModel::ar1_plus_white(0.99, 30.0), 1.0},
                                              {CovarianceModel::ar1(0.9), 0.5},
                                              {CovarianceModel::ar1(0.9), 2.0}};
    const CfarReport rep = cfar_sweep(sweep, conds, th);
    EXPECT_EQ(rep.entries.size(), 15u);
    EXPECT_TRUE(rep.detector_passes(DetectorId::asd));
    EXPECT_FALSE(rep.detector_passes(DetectorId::smi));
    EXPECT_GT(std::max(rep.pfa_ratio(DetectorId::smi, 0, 2), 1.0 / rep.pfa_ratio(DetectorId::smi, 0, 2)), 2.0);
    for (const auto& e : rep.entries)
        if (e.detector == DetectorId::kglrt && e.condition.sigma2 == 1.0) EXPECT_TRUE(e.pass) << e.condition.label();
}

TEST(MonteCarlo, RocInvariance) {
    const TrialPlan plan = small_plan({DetectorId::kglrt}, 5000);
    EXPECT_TRUE(roc_invariance_check(plan, DetectorId::kglrt, [](double t) { return 2 * t; }, 0.3));
    EXPECT_TRUE(roc_invariance_check(plan, DetectorId::kglrt, [](double t) { return t / (1 + t); }, 0.3));
    try {
        roc_invariance_check(plan, DetectorId::kglrt, [](double t) { return -t; }, 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::contract);
    }
    TrialPlan p1 = small_plan({DetectorId::glrdd, DetectorId::kglrt}, 5000);
    p1.scenario.p = 1;
    const double eta = 0.4;
    EXPECT_EQ(decision_mismatches(p1, DetectorId::kglrt, eta, DetectorId::glrdd, eta / (1 + eta)), 0u);
}

TEST(MonteCarlo, GlrtPheIncreasesUnderSignal) {
    TrialPlan plan = small_plan({DetectorId::glrt_phe, DetectorId::rao_phe, DetectorId::wald_phe}, 3000);
    plan.scenario.N = 8;
    plan.scenario.p = 1;
    plan.scenario.K = 4;
    plan.scenario.L = 16;
    const StatTable h0 = run_trials(plan);
    plan.hypothesis = Hypothesis::h1;
    plan.signal = SignalSpec{12.0, 1.0, 2};
    const StatTable h1 = run_trials(plan);
    for (std::size_t d = 0; d < 3; ++d) {
        auto med = [](std::vector<double> v) {
            std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
            return v[v.size() / 2];
        };
        EXPECT_GT(med(h1.column(d)), med(h0.column(d))) << d;
    }
}

TEST(MonteCarlo, SingleBinDetectorsRejectMultipleBins) {
    TrialPlan plan = small_plan({DetectorId::sglrt}, 10);
    plan.scenario.K = 3;
    EXPECT_THROW(run_trials(plan), Error);
}

}  // namespace
}  // namespace adaptdet
