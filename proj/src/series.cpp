#include "series.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace adaptdet::series {
namespace {

double log_poisson(double delta, double j) { return -delta + j * std::log(delta) - std::lgamma(j + 1.0); }

// Remaining Poisson mass above j (for j + 2 > δ), bounded by a geometric series.
double upper_tail_bound(double w, double delta, double j) {
    const double r = delta / (j + 2.0);
    if (r >= 1.0) return 1.0;
    return w * (delta / (j + 1.0)) / (1.0 - r);
}

// Remaining Poisson mass below j (for j < δ).
double lower_tail_bound(double w, double delta, double j) {
    if (j <= 0.0) return 0.0;
    const double r = (j - 1.0) / delta;
    if (r >= 1.0) return 1.0;
    return w * (j / delta) / (1.0 - r);
}

// Walks a Poisson mixture Σ w_j·(L_j, U_j) from the mode. `start(j)` yields the
// lower/upper values and the recurrence step at term j; `up`/`down` advance them.
template <typename State, typename Start, typename Up, typename Down>
Tail poisson_walk(double delta, Start start, Up up, Down down) {
    if (delta <= 0.0) {
        const State s = start(0.0);
        return {s.lower, s.upper};
    }
    const double j0 = std::floor(delta);
    const double w0 = std::exp(log_poisson(delta, j0));
    const State s0 = start(j0);
    double lower = w0 * s0.lower;
    double upper = w0 * s0.upper;
    int terms = 1;

    State s = s0;
    double w = w0;
    for (double j = j0; terms < kMaxTerms; ++terms) {
        if (upper_tail_bound(w, delta, j) < 0.5 * kTailMass) break;
        s = up(s, j);
        w *= delta / (j + 1.0);
        j += 1.0;
        lower += w * s.lower;
        upper += w * s.upper;
    }
    s = s0;
    w = w0;
    for (double j = j0; j > 0.0 && terms < kMaxTerms; ++terms) {
        if (lower_tail_bound(w, delta, j) < 0.5 * kTailMass) break;
        s = down(s, j);
        w *= j / delta;
        j -= 1.0;
        lower += w * s.lower;
        upper += w * s.upper;
    }
    return {std::clamp(lower, 0.0, 1.0), std::clamp(upper, 0.0, 1.0)};
}

struct IncState {
    double lower;
    double upper;
    double step;  ///< recurrence increment at the current index
};

}  // namespace

Tail gamma_mixture(double k, double delta, double t) {
    if (t <= 0.0) return {0.0, 1.0};
    // P(A+1,t) = P(A,t) − G_A,  G_A = t^A e^{−t}/Γ(A+1)
    auto start = [&](double j) {
        const double a = k + j;
        return IncState{boost::math::gamma_p(a, t), boost::math::gamma_q(a, t),
                        boost::math::gamma_p_derivative(a + 1.0, t)};
    };
    auto up = [&](IncState s, double j) {
        const double a = k + j;
        return IncState{s.lower - s.step, s.upper + s.step, s.step * t / (a + 1.0)};
    };
    auto down = [&](IncState s, double j) {
        const double a = k + j;
        const double g = s.step * a / t;  // G_{A−1}
        return IncState{s.lower + g, s.upper - g, g};
    };
    return poisson_walk<IncState>(delta, start, up, down);
}

Tail beta_mixture_a(double a, double b, double delta, double x) {
    if (x <= 0.0) return {0.0, 1.0};
    if (x >= 1.0) return {1.0, 0.0};
    // I_x(A+1,B) = I_x(A,B) − D_A,  D_A = x^A(1−x)^B / (A·B(A,B))
    auto start = [&](double j) {
        const double aa = a + j;
        return IncState{boost::math::ibeta(aa, b, x), boost::math::ibetac(aa, b, x),
                        boost::math::ibeta_derivative(aa + 1.0, b, x) * (1.0 - x) / (aa + b)};
    };
    auto up = [&](IncState s, double j) {
        const double aa = a + j;
        return IncState{s.lower - s.step, s.upper + s.step, s.step * x * (aa + b) / (aa + 1.0)};
    };
    auto down = [&](IncState s, double j) {
        const double aa = a + j;
        const double d = s.step * aa / (x * (aa - 1.0 + b));  // D_{A−1}
        return IncState{s.lower + d, s.upper - d, d};
    };
    return poisson_walk<IncState>(delta, start, up, down);
}

Tail beta_mixture_b(double a, double b, double delta, double x) {
    if (x <= 0.0) return {0.0, 1.0};
    if (x >= 1.0) return {1.0, 0.0};
    // I_x(a,B+1) = I_x(a,B) + E_B,  E_B = x^a(1−x)^B / (B·B(a,B))
    auto start = [&](double j) {
        const double bb = b + j;
        return IncState{boost::math::ibeta(a, bb, x), boost::math::ibetac(a, bb, x),
                        boost::math::ibeta_derivative(a, bb + 1.0, x) * x / (a + bb)};
    };
    auto up = [&](IncState s, double j) {
        const double bb = b + j;
        return IncState{s.lower + s.step, s.upper - s.step, s.step * (1.0 - x) * (a + bb) / (bb + 1.0)};
    };
    auto down = [&](IncState s, double j) {
        const double bb = b + j;
        const double e = s.step * bb / ((1.0 - x) * (a + bb - 1.0));  // E_{B−1}
        return IncState{s.lower - e, s.upper + e, e};
    };
    return poisson_walk<IncState>(delta, start, up, down);
}

double beta_density_b(double a, double b, double delta, double x) {
    if (x < 0.0 || x > 1.0) return 0.0;
    if (x == 0.0 || x == 1.0 || delta <= 0.0) {
        // Endpoints: sum the density terms directly by Poisson weight.
        auto term_pdf = [&](double bb) {
            return boost::math::ibeta_derivative(a, bb, x);
        };
        if (delta <= 0.0) return term_pdf(b);
        double acc = 0.0;
        double mass = 0.0;
        for (int j = 0; j < kMaxTerms && mass < 1.0 - kTailMass; ++j) {
            const double w = std::exp(log_poisson(delta, j));
            mass += w;
            acc += w * term_pdf(b + j);
            if (j > delta && w < kTailMass * 1e-3) break;
        }
        return acc;
    }
    // term_j = Pois(j; δ)·Beta(x; a, b + j). The ratio term_{j+1}/term_j =
    // δ(1−x)(a+b+j)/((j+1)(b+j)) is decreasing in j, so the terms are unimodal.
    const double y = delta * (1.0 - x);
    auto ratio = [&](double j) { return y * (a + b + j) / ((j + 1.0) * (b + j)); };
    // Positive root of (j+1)(b+j) = y(a+b+j).
    const double bq = b + 1.0 - y;
    const double cq = b - y * (a + b);
    const double disc = std::max(bq * bq - 4.0 * cq, 0.0);
    const double jm = std::max(0.0, std::ceil((-bq + std::sqrt(disc)) / 2.0));
    auto log_term = [&](double j) {
        const double bb = b + j;
        return log_poisson(delta, j) + (a - 1.0) * std::log(x) + (bb - 1.0) * std::log1p(-x) -
               (std::lgamma(a) + std::lgamma(bb) - std::lgamma(a + bb));
    };
    const double t0 = std::exp(log_term(jm));
    double acc = t0;
    int terms = 1;
    double t = t0;
    for (double j = jm; terms < kMaxTerms; ++terms, j += 1.0) {
        const double r = ratio(j);
        if (r < 1.0 && t * r / (1.0 - r) < kTailMass * acc) break;
        t *= r;
        acc += t;
        if (t == 0.0) break;
    }
    t = t0;
    for (double j = jm; j > 0.0 && terms < kMaxTerms; ++terms, j -= 1.0) {
        const double q = 1.0 / ratio(j - 1.0);  // term_{j−1}/term_j
        if (q < 1.0 && t * q / (1.0 - q) < kTailMass * acc) break;
        t *= q;
        acc += t;
        if (t == 0.0) break;
    }
    return acc;
}

}  // namespace adaptdet::series
