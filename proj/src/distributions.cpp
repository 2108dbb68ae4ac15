#include "adaptdet/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adaptdet/error.hpp"
#include "series.hpp"

namespace adaptdet {
namespace {

void require_spec(bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::parameter, what);
}

void check_chi2(const ComplexChi2Spec& s) {
    require_spec(s.k >= 1 && s.delta >= 0.0 && std::isfinite(s.delta), "Cchi2 needs k >= 1, delta >= 0");
}
void check_f(const ComplexFSpec& s) {
    require_spec(s.m >= 1 && s.n >= 1 && s.delta >= 0.0 && std::isfinite(s.delta),
                 "CF needs m, n >= 1, delta >= 0");
}
void check_beta(const ComplexBetaSpec& s) {
    require_spec(s.a >= 1 && s.b >= 1 && s.delta >= 0.0 && std::isfinite(s.delta),
                 "CB needs a, b >= 1, delta >= 0");
}

double cf_sf_raw(double m, double n, double delta, double t) {
    if (t <= 0.0) return 1.0;
    return series::beta_mixture_a(m, n, delta, t / (1.0 + t)).upper;
}

// Law of a statistic that, conditioned on a loss factor β ~ CB_{a,b}(δ_b), is
// compared as a CF_{m,n}(c·β) variable against a β-dependent threshold g(β).
struct ConditionalLaw {
    double m;
    double n;
    double f_delta_per_beta;
    double a;
    double b;  ///< 0 means β ≡ 1
    double b_delta;
    /// threshold in CF space; nullopt when the event cannot occur at this β
    std::function<std::optional<double>(double)> g;
    std::vector<double> breaks;
};

double conditional_survival(const ConditionalLaw& law, double beta) {
    const std::optional<double> g = law.g(beta);
    if (!g) return 0.0;
    return cf_sf_raw(law.m, law.n, law.f_delta_per_beta * beta, *g);
}

double conditional_pd(const ConditionalLaw& law, const QuadratureOptions& quad) {
    if (law.b == 0.0) return conditional_survival(law, 1.0);
    auto integrand = [&](double beta) {
        const double dens = series::beta_density_b(law.a, law.b, law.b_delta, beta);
        if (dens == 0.0) return 0.0;
        return conditional_survival(law, beta) * dens;
    };
    // Mass can sit in a thin layer at either end of [0,1] (e.g. small N − p or a
    // steep threshold map); graded breaks give such layers panels of their own.
    std::vector<double> breaks = law.breaks;
    for (double h = 0.25; h > 1e-7; h *= 0.25) {
        breaks.push_back(h);
        breaks.push_back(1.0 - h);
    }
    return std::clamp(integrate(integrand, 0.0, 1.0, quad, breaks), 0.0, 1.0);
}

void check_eta(double eta) {
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw Error(ErrorKind::domain, "threshold must be finite and >= 0");
}

void check_signal(double rho, double cos2phi) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw Error(ErrorKind::parameter, "SNR must be finite and >= 0");
    if (!(cos2phi >= 0.0 && cos2phi <= 1.0)) throw Error(ErrorKind::parameter, "cos2phi must lie in [0,1]");
}

std::function<std::optional<double>(double)> point_map(PointDetector det, double eta) {
    using R = std::optional<double>;
    switch (det) {
        case PointDetector::sglrt: return [eta](double) -> R { return eta; };
        case PointDetector::samf: return [eta](double b) -> R { return eta * b; };
        case PointDetector::sabort: return [eta](double b) -> R { return eta - b; };
        case PointDetector::wsabort: return [eta](double b) -> R { return eta / b - 1.0; };
        case PointDetector::srao:
            return [eta](double b) -> R {
                if (b <= eta) return std::nullopt;
                return eta / (b - eta);
            };
        case PointDetector::asd:
            return [eta](double b) -> R {
                if (eta >= 1.0) return std::nullopt;
                return (1.0 - b) * eta / (1.0 - eta);
            };
        case PointDetector::dnsamf:
            return [eta](double b) -> R {
                if (b <= eta) return std::nullopt;
                return eta * (1.0 - b) / (b - eta);
            };
        case PointDetector::aed: return [eta](double b) -> R { return eta * b + b - 1.0; };
        case PointDetector::smf: break;
    }
    throw Error(ErrorKind::unsupported, "detector has no conditional law");
}

std::vector<double> point_breaks(PointDetector det, double eta) {
    switch (det) {
        case PointDetector::sabort:
        case PointDetector::wsabort:
        case PointDetector::srao:
        case PointDetector::dnsamf: return {eta};
        case PointDetector::aed: return {1.0 / (1.0 + eta)};
        default: return {};
    }
}

void check_point_dims(int n, int p, int l) {
    if (n < 1 || p < 1 || p > n) throw Error(ErrorKind::parameter, "need 1 <= p <= N");
    if (l < n) throw Error(ErrorKind::insufficient_training, "need L >= N");
}

QuadratureOptions pfa_quadrature(double pfa) { return {std::min(1e-6, 1e-6 * pfa), 40}; }

}  // namespace

double cchi2_cdf(const ComplexChi2Spec& spec, double t) {
    check_chi2(spec);
    if (t < 0.0) throw Error(ErrorKind::domain, "Cchi2 CDF argument must be >= 0");
    return series::gamma_mixture(spec.k, spec.delta, t).lower;
}

double cchi2_sf(const ComplexChi2Spec& spec, double t) {
    check_chi2(spec);
    if (t < 0.0) throw Error(ErrorKind::domain, "Cchi2 argument must be >= 0");
    return series::gamma_mixture(spec.k, spec.delta, t).upper;
}

double cchi2_sample(const ComplexChi2Spec& spec, Rng& rng) {
    check_chi2(spec);
    // 2t is a sum of 2k unit-variance real normal squares with offsets whose
    // squares total 2δ; the whole offset sits on the first component.
    const double offset = std::sqrt(2.0 * spec.delta);
    double acc = 0.0;
    for (int i = 0; i < 2 * spec.k; ++i) {
        const double g = rng.normal() + (i == 0 ? offset : 0.0);
        acc += g * g;
    }
    return 0.5 * acc;
}

double cf_cdf(const ComplexFSpec& spec, double t) {
    check_f(spec);
    if (t < 0.0) throw Error(ErrorKind::domain, "CF CDF argument must be >= 0");
    if (t == 0.0) return 0.0;
    return series::beta_mixture_a(spec.m, spec.n, spec.delta, t / (1.0 + t)).lower;
}

double cf_sf(const ComplexFSpec& spec, double t) {
    check_f(spec);
    if (t < 0.0) throw Error(ErrorKind::domain, "CF argument must be >= 0");
    return cf_sf_raw(spec.m, spec.n, spec.delta, t);
}

double cf_sample(const ComplexFSpec& spec, Rng& rng) {
    check_f(spec);
    const double a = cchi2_sample({spec.m, spec.delta}, rng);
    const double b = cchi2_sample({spec.n, 0.0}, rng);
    return a / b;
}

double cbeta_cdf(const ComplexBetaSpec& spec, double beta) {
    check_beta(spec);
    if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::domain, "CB argument must lie in [0,1]");
    return series::beta_mixture_b(spec.a, spec.b, spec.delta, beta).lower;
}

double cbeta_pdf(const ComplexBetaSpec& spec, double beta) {
    check_beta(spec);
    if (!(beta >= 0.0 && beta <= 1.0)) throw Error(ErrorKind::domain, "CB argument must lie in [0,1]");
    return series::beta_density_b(spec.a, spec.b, spec.delta, beta);
}

double cbeta_sample(const ComplexBetaSpec& spec, Rng& rng) {
    check_beta(spec);
    const double a = cchi2_sample({spec.a, 0.0}, rng);
    const double b = cchi2_sample({spec.b, spec.delta}, rng);
    return a / (a + b);
}

double pd_point(PointDetector det, int n, int p, int l, double rho, double cos2phi, double eta,
                const PdOptions& opts) {
    check_point_dims(n, p, l);
    check_signal(rho, cos2phi);
    check_eta(eta);
    if (p == n && cos2phi < 1.0) throw Error(ErrorKind::geometry, "mismatch impossible when p = N");
    const double sin2phi = 1.0 - cos2phi;
    if (det == PointDetector::smf) return cchi2_sf({p, rho * cos2phi}, eta);
    if (det == PointDetector::aed && opts.aed_closed_form) {
        return cf_sf_raw(n, l - n + 1, rho, eta);
    }
    ConditionalLaw law{static_cast<double>(p),
                       static_cast<double>(l - n + 1),
                       rho * cos2phi,
                       static_cast<double>(l - n + p + 1),
                       static_cast<double>(n - p),
                       rho * sin2phi,
                       point_map(det, eta),
                       point_breaks(det, eta)};
    return conditional_pd(law, opts.quad);
}

double pfa_point(PointDetector det, int n, int p, int l, double eta, const PdOptions& opts) {
    return pd_point(det, n, p, l, 0.0, 1.0, eta, opts);
}

double threshold_for_pfa(PointDetector det, int n, int p, int l, double pfa) {
    check_point_dims(n, p, l);
    const PdOptions opts{pfa_quadrature(pfa), true};
    return invert_pfa([&](double eta) { return pfa_point(det, n, p, l, eta, opts); }, pfa);
}

double pd_distributed(DistributedDetector det, int n, int k, int l, double rho, double cos2phi,
                      double eta, const PdOptions& opts) {
    if (n < 1 || k < 1) throw Error(ErrorKind::parameter, "need N, K >= 1");
    if (l < n) throw Error(ErrorKind::insufficient_training, "need L >= N");
    check_signal(rho, cos2phi);
    check_eta(eta);
    const double m = k;
    const double fn = l - n + 1;
    switch (det) {
        case DistributedDetector::gkglrt: {
            ConditionalLaw law{m, fn, rho * cos2phi, static_cast<double>(l + k - n + 1),
                               static_cast<double>(n - 1), rho * (1.0 - cos2phi),
                               [eta](double) -> std::optional<double> { return eta; }, {}};
            return conditional_pd(law, opts.quad);
        }
        case DistributedDetector::gamf: {
            if (cos2phi < 1.0 && rho > 0.0) {
                throw Error(ErrorKind::unsupported, "GAMF law is available for matched signals only");
            }
            ConditionalLaw law{m, fn, rho, static_cast<double>(l - n + 2), static_cast<double>(n - 1), 0.0,
                               [eta](double b) -> std::optional<double> { return eta * b; }, {}};
            return conditional_pd(law, opts.quad);
        }
    }
    throw Error(ErrorKind::unsupported, "unknown distributed detector");
}

double pfa_distributed(DistributedDetector det, int n, int k, int l, double eta, const PdOptions& opts) {
    return pd_distributed(det, n, k, l, 0.0, 1.0, eta, opts);
}

double threshold_distributed(DistributedDetector det, int n, int k, int l, double pfa) {
    const PdOptions opts{pfa_quadrature(pfa), true};
    return invert_pfa([&](double eta) { return pfa_distributed(det, n, k, l, eta, opts); }, pfa);
}

double pd_interference(InterferenceDetector det, int n, int p, int q, int l, double rho_eff,
                       double delta2_i, double eta, const PdOptions& opts) {
    if (p < 1 || q < 0) throw Error(ErrorKind::parameter, "need p >= 1, q >= 0");
    if (p + q >= n) throw Error(ErrorKind::parameter, "interference laws need p + q < N");
    if (l < n) throw Error(ErrorKind::insufficient_training, "need L >= N");
    if (!(rho_eff >= 0.0) || !(delta2_i >= 0.0)) throw Error(ErrorKind::parameter, "SNR terms must be >= 0");
    check_eta(eta);
    using R = std::optional<double>;
    std::function<R(double)> g;
    switch (det) {
        case InterferenceDetector::glrt_he_i: g = [eta](double) -> R { return eta; }; break;
        case InterferenceDetector::ts_glrt_he_i: g = [eta](double b) -> R { return eta * b; }; break;
        case InterferenceDetector::glrt_phe_i:
            g = [eta](double b) -> R {
                if (eta >= 1.0) return std::nullopt;
                return (1.0 - b) * eta / (1.0 - eta);
            };
            break;
    }
    ConditionalLaw law{static_cast<double>(p),
                       static_cast<double>(l - n + q + 1),
                       rho_eff,
                       static_cast<double>(l - n + p + q + 1),
                       static_cast<double>(n - p - q),
                       delta2_i,
                       g,
                       {}};
    return conditional_pd(law, opts.quad);
}

double pfa_interference(InterferenceDetector det, int n, int p, int q, int l, double eta,
                        const PdOptions& opts) {
    return pd_interference(det, n, p, q, l, 0.0, 0.0, eta, opts);
}

double threshold_interference(InterferenceDetector det, int n, int p, int q, int l, double pfa) {
    const PdOptions opts{pfa_quadrature(pfa), true};
    return invert_pfa([&](double eta) { return pfa_interference(det, n, p, q, l, eta, opts); }, pfa);
}

double invert_pfa(const std::function<double(double)>& pfa_of_eta, double target) {
    if (!(target > 0.0 && target < 1.0)) throw Error(ErrorKind::domain, "target PFA must lie in (0,1)");
    double lo = 0.0;
    if (!(pfa_of_eta(lo) > target)) throw Error(ErrorKind::domain, "PFA at zero threshold is below target");
    double hi = 1.0;
    while (pfa_of_eta(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw Error(ErrorKind::domain, "could not bracket the threshold");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pfa_of_eta(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw Error(ErrorKind::parameter, "KS statistic needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_pvalue(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Jacobi-theta form, fast for small λ.
        const double pi = std::numbers::pi;
        double acc = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double m = 2.0 * k - 1.0;
            acc += std::exp(-m * m * pi * pi / (8.0 * lambda * lambda));
        }
        return std::clamp(1.0 - std::sqrt(2.0 * pi) / lambda * acc, 0.0, 1.0);
    }
    double acc = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        acc += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * acc, 0.0, 1.0);
}

}  // namespace adaptdet
