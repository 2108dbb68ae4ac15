#include "adaptdet/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "adaptdet/error.hpp"
#include "adaptdet/kernels.hpp"
#include "adaptdet/linalg.hpp"

namespace adaptdet {

std::string CovarianceModel::name() const {
    std::ostringstream os;
    os.precision(10);
    switch (kind) {
        case Kind::identity: os << "identity"; break;
        case Kind::ar1: os << "ar1:" << rho_c; break;
        case Kind::ar1_plus_white: os << "ar1_plus_white:" << rho_c << ':' << cnr_db; break;
    }
    return os.str();
}

CovarianceModel CovarianceModel::parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    auto number = [&](std::size_t i) {
        try {
            std::size_t used = 0;
            const double v = std::stod(parts.at(i), &used);
            if (used != parts[i].size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::config, "bad covariance model '" + text + "'");
        }
    };
    if (parts.size() == 1 && parts[0] == "identity") return identity();
    if (parts.size() == 2 && parts[0] == "ar1") return ar1(number(1));
    if (parts.size() == 3 && parts[0] == "ar1_plus_white") return ar1_plus_white(number(1), number(2));
    throw Error(ErrorKind::config, "bad covariance model '" + text +
                                       "' (expected identity, ar1:RHO or ar1_plus_white:RHO:CNR_DB)");
}

CMatrix build_covariance(const CovarianceModel& model, int n) {
    if (n < 1) throw Error(ErrorKind::parameter, "covariance dimension must be positive");
    if (model.kind == CovarianceModel::Kind::identity) return CMatrix::Identity(n, n);
    if (!(model.rho_c >= 0.0 && model.rho_c < 1.0)) {
        throw Error(ErrorKind::parameter, "AR(1) correlation must lie in [0,1)");
    }
    CMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = std::pow(model.rho_c, std::abs(i - j));
    if (model.kind == CovarianceModel::Kind::ar1_plus_white) {
        if (!std::isfinite(model.cnr_db)) throw Error(ErrorKind::parameter, "CNR must be finite");
        r *= std::pow(10.0, model.cnr_db / 10.0);
        r += CMatrix::Identity(n, n);
    }
    return r;
}

void ScenarioConfig::validate() const {
    if (N < 1) throw Error(ErrorKind::parameter, "N must be at least 1");
    if (p < 1 || p > N) throw Error(ErrorKind::parameter, "p must satisfy 1 <= p <= N");
    if (q < 0 || p + q > N) throw Error(ErrorKind::parameter, "q must satisfy q >= 0 and p + q <= N");
    if (K < 1) throw Error(ErrorKind::parameter, "K must be at least 1");
    if (L < N) throw Error(ErrorKind::insufficient_training, "L must be at least N");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw Error(ErrorKind::parameter, "sigma2 must be positive");
    if (!(pfa > 0.0 && pfa < 1.0)) throw Error(ErrorKind::parameter, "pfa must lie in (0,1)");
}

CVector steering_vector(int n, double f) {
    CVector v(n);
    for (int k = 0; k < n; ++k) v(k) = std::polar(1.0, 2.0 * std::numbers::pi * f * k);
    return v;
}

CMatrix nominal_subspace(int n, const std::vector<double>& freqs) {
    if (n < 1) throw Error(ErrorKind::parameter, "N must be at least 1");
    CMatrix h(n, static_cast<Eigen::Index>(freqs.size()));
    for (std::size_t k = 0; k < freqs.size(); ++k) h.col(static_cast<Eigen::Index>(k)) = steering_vector(n, freqs[k]);
    linalg::orthonormal_basis(h);
    return h;
}

std::vector<double> default_signal_freqs(int p) {
    std::vector<double> f;
    for (int k = 0; k < p; ++k) f.push_back((k + 1.0) / (2.0 * (p + 1)));
    return f;
}

std::vector<double> default_interference_freqs(int q) {
    std::vector<double> f;
    for (int k = 0; k < q; ++k) f.push_back(0.5 + (k + 1.0) / (2.0 * (q + 1)));
    return f;
}

double SignalSpec::rho() const { return std::pow(10.0, snr_db / 10.0); }

CVector actual_signal(const CMatrix& h, const CMatrix& r, const SignalSpec& spec, Rng& rng) {
    if (!(spec.cos2phi >= 0.0 && spec.cos2phi <= 1.0)) {
        throw Error(ErrorKind::parameter, "cos2phi must lie in [0,1]");
    }
    if (h.rows() != r.rows()) throw Error(ErrorKind::dimension, "H and R row mismatch");
    const Eigen::Index n = h.rows();
    const Eigen::Index p = h.cols();
    const double rho = spec.rho();
    if (spec.cos2phi < 1.0 && p >= n) {
        throw Error(ErrorKind::geometry, "mismatch requested but span(H) is the whole space");
    }
    const CMatrix r_inv_sqrt = linalg::inv_sqrt(r);
    const CMatrix q = linalg::orthonormal_basis(r_inv_sqrt * h);

    CVector u = q * rng.complex_normal(p, 1);
    u.normalize();
    CVector w = CVector::Zero(n);
    if (p < n) {
        // Seeded QR of a random matrix gives a uniformly oriented orthocomplement basis.
        CMatrix m(n, n);
        m << q, rng.complex_normal(n, n - p);
        Eigen::HouseholderQR<CMatrix> qr(m);
        const CMatrix full_q = qr.householderQ() * CMatrix::Identity(n, n);
        const CMatrix perp = full_q.rightCols(n - p);
        w = perp * rng.complex_normal(n - p, 1);
        w -= q * (q.adjoint() * w);
        w.normalize();
    }
    const double c = std::sqrt(spec.cos2phi);
    const double s = std::sqrt(1.0 - spec.cos2phi);
    const CVector s_bar = std::sqrt(rho) * (c * u + s * w);
    return linalg::hermitian_sqrt(r) * s_bar;
}

CVector actual_signal(const CMatrix& h, const CMatrix& r, const SignalSpec& spec) {
    Rng rng(spec.seed);
    return actual_signal(h, r, spec, rng);
}

Synthesizer::Synthesizer(const ScenarioConfig& config, const CMatrix& r)
    : config_(config), r_(r), r_sqrt_(linalg::hermitian_sqrt(r)) {
    config_.validate();
    if (r.rows() != config.N) throw Error(ErrorKind::dimension, "covariance size differs from N");
}

DataSet Synthesizer::draw(Hypothesis hyp, const SignalModel* signal,
                          const InterferenceModel* interference, Rng& rng) const {
    const int n = config_.N;
    const int k = config_.K;
    const int l = config_.L;
    DataSet d;
    d.training = r_sqrt_ * rng.complex_normal(n, l);
    d.test = (std::sqrt(config_.test_scale()) * r_sqrt_) * rng.complex_normal(n, k);
    if (hyp == Hypothesis::h1) {
        if (signal != nullptr) {
            if (signal->s0.size() != n) throw Error(ErrorKind::dimension, "signal length differs from N");
            if (signal->a.size() == 0) {
                d.test.colwise() += signal->s0;
            } else {
                if (signal->a.size() != k) throw Error(ErrorKind::dimension, "signal coordinates differ from K");
                d.test += signal->s0 * signal->a.adjoint();
            }
        }
        if (interference != nullptr && interference->j.cols() > 0) {
            const CMatrix& j = interference->j;
            const CMatrix& phi = interference->phi;
            if (j.rows() != n || phi.rows() != j.cols() || (phi.cols() != 1 && phi.cols() != k)) {
                throw Error(ErrorKind::dimension, "interference shape mismatch");
            }
            if (phi.cols() == 1) {
                d.test.colwise() += j * phi.col(0);
            } else {
                d.test += j * phi;
            }
        }
    }
    d.scm = kernels::gram(d.training);
    return d;
}

DataSet synthesize(const ScenarioConfig& config, const CovarianceModel& model,
                   const std::optional<SignalModel>& signal,
                   const std::optional<InterferenceModel>& interference, Hypothesis hyp,
                   std::uint64_t seed) {
    config.validate();
    Synthesizer synth(config, build_covariance(model, config.N));
    Rng rng(seed);
    return synth.draw(hyp, signal ? &*signal : nullptr, interference ? &*interference : nullptr, rng);
}

}  // namespace adaptdet
