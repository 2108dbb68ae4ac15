#include "adaptdet/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "adaptdet/detectors_distributed.hpp"
#include "adaptdet/detectors_interference.hpp"
#include "adaptdet/detectors_point.hpp"
#include "adaptdet/distributions.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"
#include "adaptdet/montecarlo.hpp"
#include "adaptdet/random.hpp"

namespace adaptdet {
namespace {

double rel_error(double lhs, double rhs) {
    const double scale = std::max(std::abs(rhs), std::abs(lhs));
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

// Records the worst relative error per named relation.
class Tracker {
  public:
    void add(const std::string& name, double lhs, double rhs) {
        auto it = errors_.find(name);
        if (it == errors_.end()) {
            order_.push_back(name);
            it = errors_.emplace(name, 0.0).first;
        }
        it->second = std::max(it->second, std::isfinite(lhs) && std::isfinite(rhs) ? rel_error(lhs, rhs)
                                                                                    : INFINITY);
    }

    std::vector<IdentityResult> results(std::size_t instances, double tol) const {
        std::vector<IdentityResult> out;
        for (const auto& name : order_) {
            const double e = errors_.at(name);
            out.push_back({name, e, tol, instances, e <= tol});
        }
        return out;
    }

  private:
    std::vector<std::string> order_;
    std::map<std::string, double> errors_;
};

struct Instance {
    CVector x;
    CMatrix x_multi;
    CMatrix s;
    CMatrix h;
    CMatrix j;
};

// Random correlated instance: R = AAᴴ/N + 0.1·I, training ~ CN(0,R), test carries
// a random component in span(H) so statistics cover both small and large values.
Instance random_instance(Rng& rng, int n, int p, int q, int k, int l) {
    const CMatrix a = rng.complex_normal(n, n);
    const CMatrix r = a * a.adjoint() / double(n) + 0.1 * CMatrix::Identity(n, n);
    const CMatrix r_half = linalg::hermitian_sqrt(r);
    Instance in;
    in.h = rng.complex_normal(n, p);
    in.j = rng.complex_normal(n, q);
    const CMatrix train = r_half * rng.complex_normal(n, l);
    in.s = kernels::gram(train);
    const double amp = std::exp(2.0 * rng.normal());
    in.x_multi = r_half * rng.complex_normal(n, k) + amp * in.h * rng.complex_normal(p, k);
    in.x = in.x_multi.col(0);
    return in;
}

}  // namespace

std::vector<IdentityResult> identity_suite(std::size_t instances, std::uint64_t seed, double tol) {
    Tracker t;
    const int ns[] = {4, 8, 12};
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(stream_seed(seed, i));
        const int n = ns[i % 3];
        const int p = 1 + static_cast<int>((i / 3) % 3);
        const int q = std::min(static_cast<int>((i / 9) % 3), n - p - 1);
        const Instance in = random_instance(rng, n, p, q, 1, 2 * n);

        const PointStats s = subspace_bank(in.x, in.s, in.h);
        const double b = s.beta;
        const double g = s.sglrt;
        t.add("samf = sglrt/beta", s.samf, g / b);
        t.add("srao = beta*sglrt/(1+sglrt)", s.srao, b * g / (1.0 + g));
        t.add("sabort = beta+sglrt", s.sabort, b + g);
        t.add("wsabort = (1+sglrt)*beta", s.wsabort, (1.0 + g) * b);
        t.add("aed = (1-beta+sglrt)/beta", s.aed, (1.0 - b + g) / b);
        t.add("asd = sglrt/(1-beta+sglrt)", s.asd, g / (1.0 - b + g));
        t.add("dnsamf = beta*asd", s.dnsamf, b * s.asd);

        const InterferenceStats is = interference_bank(in.x, in.s, in.h, in.j);
        t.add("ts_glrt_he_i = glrt_he_i/beta_i", is.ts_glrt_he_i, is.glrt_he_i / is.beta_i);
        const double u = is.glrt_he_i / (1.0 - is.beta_i);
        t.add("glrt_phe_i = u/(1+u) with u = glrt_he_i/(1-beta_i)", is.glrt_phe_i, u / (1.0 + u));
    }
    return t.results(instances, tol);
}

std::vector<IdentityResult> reduction_suite(std::size_t instances, std::uint64_t seed, double tol) {
    Tracker t;
    const int ns[] = {4, 8, 12};
    for (std::size_t i = 0; i < instances; ++i) {
        Rng rng(stream_seed(seed, i));
        const int n = ns[i % 3];
        const Instance in = random_instance(rng, n, 1, 0, 1, 2 * n);
        const CVector s = in.h.col(0);
        const CMatrix x = in.x_multi;

        const PointStats ps = subspace_bank(in.x, in.s, in.h);
        const RankOneStats r1 = rank_one_bank(in.x, in.s, s);
        const DistributedHeStats he = distributed_rank1_he(x, in.s, s);
        const DistributedPheStats phe = distributed_rank1_phe(x, in.s, s, 2 * n);
        const DirectionStats dd = direction_bank(x, in.s, in.h);
        const DosStats dos = dos_bank(x, in.s, in.h);
        const InterferenceStats is = interference_bank(in.x, in.s, in.h, CMatrix(n, 0));

        t.add("gkglrt -> kglrt", he.gkglrt, r1.kglrt);
        t.add("gamf -> amf", he.gamf, r1.amf);
        t.add("gasd -> ace", phe.gasd, r1.ace);
        t.add("amdd -> samf", dd.amdd, ps.samf);
        t.add("gadd -> asd", dd.gadd, ps.asd);
        t.add("snrdd -> samf", dd.snrdd, ps.samf);
        t.add("wald_dos -> samf", dos.wald_dos, ps.samf);
        t.add("glrt_dos -> 1+sglrt", dos.glrt_dos, 1.0 + ps.sglrt);
        t.add("glrdd -> kglrt/(1+kglrt)", dd.glrdd, r1.kglrt / (1.0 + r1.kglrt));
        t.add("glrt_he_i (empty J) -> sglrt", is.glrt_he_i, ps.sglrt);
        t.add("ts_glrt_he_i (empty J) -> samf", is.ts_glrt_he_i, ps.samf);
        t.add("glrt_phe_i (empty J) -> asd", is.glrt_phe_i, ps.asd);
        t.add("rao_he_i (empty J) -> srao", is.rao_he_i, ps.srao);
        t.add("wald_he_i (empty J) -> samf", is.wald_he_i, ps.samf);
        t.add("beta_i (empty J) -> beta", is.beta_i, ps.beta);
    }
    return t.results(instances, tol);
}

std::vector<KsResult> ks_suite(std::size_t samples, std::uint64_t seed, unsigned workers) {
    std::vector<KsResult> out;
    auto run = [&](const std::string& name, const std::function<double(Rng&)>& draw,
                   const std::function<double(double)>& cdf, std::uint64_t stream) {
        Rng rng(stream_seed(seed, stream));
        std::vector<double> xs(samples);
        for (auto& v : xs) v = draw(rng);
        const double d = ks_statistic(xs, cdf);
        const double pv = ks_pvalue(d, samples);
        out.push_back({name, d, pv, samples, pv > 0.01});
    };

    const ComplexChi2Spec chi[] = {{1, 0.0}, {3, 2.5}};
    const ComplexFSpec fs[] = {{2, 13, 0.0}, {2, 13, 8.0}};
    const ComplexBetaSpec bs[] = {{13, 10, 0.0}, {13, 10, 20.0}};
    std::uint64_t stream = 0;
    for (const auto& c : chi) {
        run("cchi2 k=" + std::to_string(c.k) + " delta=" + std::to_string(c.delta).substr(0, 4),
            [c](Rng& r) { return cchi2_sample(c, r); }, [c](double t) { return cchi2_cdf(c, t); }, stream++);
    }
    for (const auto& c : fs) {
        run("cf m=" + std::to_string(c.m) + " n=" + std::to_string(c.n) + " delta=" + std::to_string(c.delta).substr(0, 4),
            [c](Rng& r) { return cf_sample(c, r); }, [c](double t) { return cf_cdf(c, t); }, stream++);
    }
    for (const auto& c : bs) {
        run("cbeta a=" + std::to_string(c.a) + " b=" + std::to_string(c.b) + " delta=" + std::to_string(c.delta).substr(0, 4),
            [c](Rng& r) { return cbeta_sample(c, r); }, [c](double t) { return cbeta_cdf(c, t); }, stream++);
    }

    // Simulated AED statistics under a mismatched signal against the
    // cos²φ-free law CF_{N,L−N+1}(ρ).
    TrialPlan plan;
    plan.n_trials = samples;
    plan.master_seed = stream_seed(seed, stream++);
    plan.scenario.N = 12;
    plan.scenario.p = 2;
    plan.scenario.L = 24;
    plan.covariance = CovarianceModel::ar1(0.9);
    plan.detectors = {DetectorId::aed};
    plan.hypothesis = Hypothesis::h1;
    plan.signal = SignalSpec{10.0, 0.5, seed};
    plan.workers = workers;
    std::vector<double> aed = run_trials(plan).column(0);
    const ComplexFSpec law{12, 13, 10.0};
    const double d = ks_statistic(aed, [&](double t) { return cf_cdf(law, t); });
    const double pv = ks_pvalue(d, samples);
    out.push_back({"aed simulated N=12 L=24 rho=10 vs cf m=12 n=13", d, pv, samples, pv > 0.01});
    return out;
}

}  // namespace adaptdet
