#include "adaptdet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "adaptdet/detectors_interference.hpp"
#include "adaptdet/distributions.hpp"
#include "adaptdet/error.hpp"
#include "adaptdet/montecarlo.hpp"
#include "adaptdet/random.hpp"
#include "adaptdet/validation.hpp"

namespace adaptdet {
namespace {

constexpr std::string_view kSubcommandNames[] = {"pd-vs-snr", "pd-vs-mismatch", "mesa",
                                                 "cfar-check", "validate-dist", "identities"};

std::vector<double> grid(double start, double step, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = start + step * i;
    return g;
}

bool is_pd_grid(Subcommand s) {
    return s == Subcommand::pd_vs_snr || s == Subcommand::pd_vs_mismatch || s == Subcommand::mesa;
}

// Detectors whose statistic is invariant to a common scale of the test data,
// so their HE law carries over to PHE with the SNR divided by σ².
bool scale_invariant(DetectorId id) {
    return id == DetectorId::asd || id == DetectorId::ace || id == DetectorId::glrt_phe_i;
}

std::vector<DetectorId> default_detectors(const ExperimentConfig& c) {
    if (is_pd_grid(c.subcommand)) {
        auto d = detectors_in(DetectorGroup::subspace);
        d.push_back(DetectorId::smf);
        return d;
    }
    std::vector<DetectorId> d;
    auto append = [&](DetectorGroup g) {
        const auto more = detectors_in(g);
        d.insert(d.end(), more.begin(), more.end());
    };
    if (c.scenario.K == 1) {
        append(DetectorGroup::subspace);
        append(DetectorGroup::rank_one);
        if (c.scenario.q > 0) append(DetectorGroup::interference);
    } else {
        append(DetectorGroup::distributed_he);
        append(DetectorGroup::distributed_phe);
        append(DetectorGroup::direction);
        append(DetectorGroup::dos);
    }
    return d;
}

// Analytic law of one detector in one scenario, when it applies.
class AnalyticLaw {
  public:
    AnalyticLaw(DetectorId id, const ScenarioConfig& sc, bool interference_present)
        : id_(id), sc_(sc) {
        const bool phe = sc.environment == Environment::phe;
        if (phe && !scale_invariant(id)) return;
        if (auto l = interference_law(id)) {
            if (sc.p + sc.q < sc.N && sc.K == 1) interf_ = l;
            return;
        }
        if (interference_present) return;
        if (auto l = point_law(id, sc.p)) {
            if (sc.K == 1) point_ = l;
        } else if (auto l2 = distributed_law(id, sc.p)) {
            dist_ = l2;
        }
    }

    bool available() const { return point_ || dist_ || interf_; }

    double threshold() const {
        if (point_) return threshold_for_pfa(*point_, sc_.N, sc_.p, sc_.L, sc_.pfa);
        if (dist_) return threshold_distributed(*dist_, sc_.N, sc_.K, sc_.L, sc_.pfa);
        return threshold_interference(*interf_, sc_.N, sc_.p, sc_.q, sc_.L, sc_.pfa);
    }

    /// nullopt when the law does not cover this signal (GAMF under mismatch).
    std::optional<double> pd(double rho, double cos2phi, const InterferenceGeometry& geo, double eta) const {
        const double scale = sc_.test_scale();
        try {
            if (point_) return pd_point(*point_, sc_.N, sc_.p, sc_.L, rho / scale, cos2phi, eta);
            if (dist_) return pd_distributed(*dist_, sc_.N, sc_.K, sc_.L, rho / scale, cos2phi, eta);
            return pd_interference(*interf_, sc_.N, sc_.p, sc_.q, sc_.L, geo.rho_eff / scale, geo.delta2_i / scale,
                                   eta);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::unsupported) return std::nullopt;
            throw;
        }
    }

  private:
    DetectorId id_;
    ScenarioConfig sc_;
    std::optional<PointDetector> point_;
    std::optional<DistributedDetector> dist_;
    std::optional<InterferenceDetector> interf_;
};

TrialPlan base_plan(const ExperimentConfig& c) {
    TrialPlan plan;
    plan.n_trials = c.n_trials;
    plan.scenario = c.scenario;
    plan.covariance = c.covariance;
    plan.detectors = c.detectors;
    plan.inr_db = c.inr_db;
    plan.workers = c.workers;
    return plan;
}

ExperimentResult run_pd_grid(const ExperimentConfig& c) {
    const bool want_analytic = c.mode != Mode::montecarlo;
    const bool want_mc = c.mode != Mode::analytic;
    const bool interference_present = c.inr_db.has_value() && c.scenario.q > 0;
    const std::size_t nd = c.detectors.size();

    std::vector<AnalyticLaw> laws;
    std::vector<std::optional<double>> thresholds(nd);
    for (std::size_t d = 0; d < nd; ++d) {
        laws.emplace_back(c.detectors[d], c.scenario, interference_present);
        if (laws[d].available() && c.mode != Mode::montecarlo) thresholds[d] = laws[d].threshold();
    }

    if (want_mc) {
        // One H0 run calibrates every detector that lacks an analytic threshold.
        TrialPlan cal = base_plan(c);
        cal.master_seed = stream_seed(c.seed, 0);
        cal.hypothesis = Hypothesis::h0;
        const StatTable h0 = run_trials(cal);
        for (std::size_t d = 0; d < nd; ++d) {
            if (!thresholds[d]) thresholds[d] = threshold_from_samples(h0.column(d), c.scenario.pfa);
        }
    }

    struct Point {
        double snr, cos2;
    };
    std::vector<Point> points;
    for (double snr : c.snr_db)
        for (double cos2 : c.cos2phi) points.push_back({snr, cos2});

    std::vector<std::vector<std::optional<double>>> pd_an(nd, std::vector<std::optional<double>>(points.size()));
    std::vector<std::vector<std::optional<PdEstimate>>> pd_mc(nd, std::vector<std::optional<PdEstimate>>(points.size()));

    const TrialPlan proto = base_plan(c);
    const BankContext ctx = plan_context(proto);
    for (std::size_t g = 0; g < points.size(); ++g) {
        TrialPlan plan = proto;
        plan.hypothesis = Hypothesis::h1;
        plan.signal = SignalSpec{points[g].snr, points[g].cos2, c.seed};
        plan.master_seed = stream_seed(c.seed, 1 + g);
        const double rho = plan.signal->rho();

        if (want_analytic) {
            InterferenceGeometry geo;
            bool geo_ready = false;
            for (std::size_t d = 0; d < nd; ++d) {
                if (!laws[d].available()) continue;
                if (interference_law(c.detectors[d]) && !geo_ready) {
                    geo = mismatch_geometry(plan_signal(plan, ctx), ctx.r, ctx.h, ctx.j);
                    geo_ready = true;
                }
                pd_an[d][g] = laws[d].pd(rho, points[g].cos2, geo, *thresholds[d]);
            }
        }
        if (want_mc) {
            const StatTable h1 = run_trials(plan);
            for (std::size_t d = 0; d < nd; ++d) pd_mc[d][g] = estimate_from_samples(h1.column(d), *thresholds[d]);
        }
    }

    ExperimentResult res;
    res.table.header = {"detector", "snr_db", "cos2phi", "threshold", "pd_analytic", "pd_mc",
                        "ci_low",   "ci_high", "n_trials", "seed"};
    for (std::size_t d = 0; d < nd; ++d) {
        for (std::size_t g = 0; g < points.size(); ++g) {
            const auto& mc = pd_mc[d][g];
            res.table.rows.push_back({std::string(detector_name(c.detectors[d])), format_real(points[g].snr),
                                      format_real(points[g].cos2), format_real(thresholds[d]),
                                      format_real(pd_an[d][g]), mc ? format_real(mc->pd) : "",
                                      mc ? format_real(mc->ci_low) : "", mc ? format_real(mc->ci_high) : "",
                                      mc ? std::to_string(mc->n) : "", mc ? std::to_string(c.seed) : ""});
        }
    }
    return res;
}

ExperimentResult run_cfar(const ExperimentConfig& c) {
    std::vector<CfarCondition> conds;
    for (const auto& cov : c.cfar_covariances) conds.push_back({cov, 1.0});
    for (double s2 : c.cfar_sigma2)
        for (const auto& cov : c.cfar_covariances) conds.push_back({cov, s2});

    TrialPlan cal = base_plan(c);
    cal.covariance = conds.front().covariance;
    cal.scenario.environment = Environment::he;
    cal.scenario.sigma2 = 1.0;
    cal.master_seed = stream_seed(c.seed, 0);
    const StatTable h0 = run_trials(cal);
    std::vector<double> thresholds;
    for (std::size_t d = 0; d < c.detectors.size(); ++d)
        thresholds.push_back(threshold_from_samples(h0.column(d), c.scenario.pfa));

    TrialPlan sweep = cal;
    sweep.master_seed = stream_seed(c.seed, 1);
    const CfarReport rep = cfar_sweep(sweep, conds, thresholds);

    ExperimentResult res;
    res.table.header = {"detector", "covariance", "sigma2", "threshold", "pfa_mc", "ci_low",
                        "ci_high",  "n_trials",   "seed",   "pass"};
    for (const auto& e : rep.entries) {
        res.table.rows.push_back({std::string(detector_name(e.detector)), e.condition.covariance.name(),
                                  format_real(e.condition.sigma2), format_real(e.threshold), format_real(e.pfa.pd),
                                  format_real(e.pfa.ci_low), format_real(e.pfa.ci_high), std::to_string(e.pfa.n),
                                  std::to_string(c.seed), e.pass ? "1" : "0"});
    }
    return res;
}

ExperimentResult run_identities(const ExperimentConfig& c) {
    ExperimentResult res;
    res.table.header = {"identity", "max_rel_error", "tolerance", "instances", "pass"};
    auto add = [&](const std::vector<IdentityResult>& rs) {
        for (const auto& r : rs) {
            res.table.rows.push_back({r.name, format_real(r.max_rel_error), format_real(r.tolerance),
                                      std::to_string(r.instances), r.pass ? "1" : "0"});
            res.ok = res.ok && r.pass;
        }
    };
    add(identity_suite(c.instances, c.seed));
    add(reduction_suite(c.instances, c.seed));
    return res;
}

ExperimentResult run_validate_dist(const ExperimentConfig& c) {
    ExperimentResult res;
    res.table.header = {"case", "statistic", "p_value", "n_samples", "pass"};
    for (const auto& r : ks_suite(c.samples, c.seed, c.workers)) {
        res.table.rows.push_back({r.name, format_real(r.statistic), format_real(r.p_value), std::to_string(r.n),
                                  r.pass ? "1" : "0"});
        res.ok = res.ok && r.pass;
    }
    return res;
}

Environment parse_env(const std::string& v, double& sigma2) {
    if (v == "he") {
        sigma2 = 1.0;
        return Environment::he;
    }
    if (v.rfind("phe:", 0) == 0) {
        sigma2 = parse_real("env", v.substr(4));
        if (!(sigma2 > 0.0)) throw Error(ErrorKind::config, "env: PHE sigma2 must be positive");
        return Environment::phe;
    }
    throw Error(ErrorKind::config, "env must be 'he' or 'phe:SIGMA2', got '" + v + "'");
}

int parse_dim(const std::string& key, const std::string& v) {
    const long long x = parse_int(key, v);
    if (x < 0 || x > 4096) throw Error(ErrorKind::config, key + " out of range: " + v);
    return static_cast<int>(x);
}

}  // namespace

std::string_view subcommand_name(Subcommand s) noexcept { return kSubcommandNames[static_cast<int>(s)]; }

Subcommand parse_subcommand(std::string_view name) {
    for (int i = 0; i < 6; ++i)
        if (kSubcommandNames[i] == name) return static_cast<Subcommand>(i);
    throw Error(ErrorKind::config, "unknown subcommand '" + std::string(name) + "'");
}

Mode parse_mode(std::string_view name) {
    if (name == "analytic") return Mode::analytic;
    if (name == "montecarlo") return Mode::montecarlo;
    if (name == "both") return Mode::both;
    throw Error(ErrorKind::config, "mode must be analytic, montecarlo or both, got '" + std::string(name) + "'");
}

ExperimentConfig default_config(Subcommand s) {
    ExperimentConfig c;
    c.subcommand = s;
    switch (s) {
        case Subcommand::pd_vs_snr:
            c.snr_db = grid(0.0, 1.0, 25);
            c.cos2phi = {1.0};
            break;
        case Subcommand::pd_vs_mismatch:
            c.snr_db = {18.0};
            c.cos2phi = grid(0.0, 0.05, 21);
            break;
        case Subcommand::mesa:
            c.snr_db = grid(0.0, 1.0, 41);
            c.cos2phi = grid(0.0, 0.05, 21);
            break;
        case Subcommand::cfar_check:
            c.scenario.pfa = 1e-2;
            c.n_trials = 100000;
            c.cfar_covariances = {CovarianceModel::identity(), CovarianceModel::ar1(0.9),
                                  CovarianceModel::ar1_plus_white(0.99, 30.0)};
            break;
        default:
            break;
    }
    return c;
}

ExperimentConfig config_from_map(Subcommand s, const ConfigMap& map) {
    ExperimentConfig c = default_config(s);
    std::string detectors;
    for (const auto& [key, v] : map) {
        if (key == "N") c.scenario.N = parse_dim(key, v);
        else if (key == "p") c.scenario.p = parse_dim(key, v);
        else if (key == "q") c.scenario.q = parse_dim(key, v);
        else if (key == "K") c.scenario.K = parse_dim(key, v);
        else if (key == "L") c.scenario.L = parse_dim(key, v);
        else if (key == "pfa") c.scenario.pfa = parse_real(key, v);
        else if (key == "env") c.scenario.environment = parse_env(v, c.scenario.sigma2);
        else if (key == "covariance") c.covariance = CovarianceModel::parse(v);
        else if (key == "snr") c.snr_db = parse_real_list(key, v);
        else if (key == "cos2phi") c.cos2phi = parse_real_list(key, v);
        else if (key == "detectors") detectors = v;
        else if (key == "trials") c.n_trials = parse_u64(key, v);
        else if (key == "seed") c.seed = parse_u64(key, v);
        else if (key == "out") c.out = v;
        else if (key == "mode") c.mode = parse_mode(v);
        else if (key == "workers") c.workers = static_cast<unsigned>(parse_dim(key, v));
        else if (key == "inr") c.inr_db = parse_real(key, v);
        else if (key == "covariances") {
            c.cfar_covariances.clear();
            for (const auto& item : split_list(v)) c.cfar_covariances.push_back(CovarianceModel::parse(item));
        } else if (key == "sigma2") c.cfar_sigma2 = parse_real_list(key, v);
        else if (key == "instances") c.instances = parse_u64(key, v);
        else if (key == "samples") c.samples = parse_u64(key, v);
        else throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    }
    c.detectors = detectors.empty() ? default_detectors(c) : parse_detectors(detectors);
    c.validate();
    return c;
}

void ExperimentConfig::validate() const {
    scenario.validate();
    if (subcommand == Subcommand::identities) {
        if (instances == 0) throw Error(ErrorKind::config, "instances must be positive");
        return;
    }
    if (subcommand == Subcommand::validate_dist) {
        if (samples < 2) throw Error(ErrorKind::config, "samples must be at least 2");
        return;
    }
    if (detectors.empty()) throw Error(ErrorKind::config, "detector list is empty");
    if (n_trials == 0) throw Error(ErrorKind::config, "trials must be positive");
    std::set<DetectorId> seen;
    for (DetectorId d : detectors) {
        if (!seen.insert(d).second)
            throw Error(ErrorKind::config, "detector listed twice: " + std::string(detector_name(d)));
        if (scenario.K > 1 && requires_single_bin(d))
            throw Error(ErrorKind::config, std::string(detector_name(d)) + " needs K = 1");
    }
    if (is_pd_grid(subcommand)) {
        if (snr_db.empty() || cos2phi.empty()) throw Error(ErrorKind::config, "SNR and cos2phi grids must be non-empty");
        for (double c2 : cos2phi)
            if (!(c2 >= 0.0 && c2 <= 1.0)) throw Error(ErrorKind::config, "cos2phi must lie in [0,1]");
    }
    if (subcommand == Subcommand::cfar_check) {
        if (cfar_covariances.empty()) throw Error(ErrorKind::config, "cfar-check needs at least one covariance");
        for (double s2 : cfar_sigma2)
            if (!(s2 > 0.0)) throw Error(ErrorKind::config, "PHE sigma2 values must be positive");
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    switch (config.subcommand) {
        case Subcommand::pd_vs_snr:
        case Subcommand::pd_vs_mismatch:
        case Subcommand::mesa:
            return run_pd_grid(config);
        case Subcommand::cfar_check:
            return run_cfar(config);
        case Subcommand::identities:
            return run_identities(config);
        case Subcommand::validate_dist:
            return run_validate_dist(config);
    }
    throw Error(ErrorKind::contract, "unhandled subcommand");
}

}  // namespace adaptdet
