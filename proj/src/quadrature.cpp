#include "adaptdet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace adaptdet {
namespace {

// 15-point Gauss–Legendre nodes (positive half) and weights.
constexpr std::array<double, 8> kNodes = {
    0.0000000000000000000, 0.2011940939974345223, 0.3941513470775633699, 0.5709721726085388475,
    0.7244177313601700475, 0.8482065834104272162, 0.9372733924007059043, 0.9879925180204854285};
constexpr std::array<double, 8> kWeights = {
    0.2025782419255612729, 0.1984314853271115765, 0.1861610000155622110, 0.1662692058169939336,
    0.1395706779261543144, 0.1071592204671719350, 0.0703660474881081247, 0.0307532419961172684};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = kWeights[0] * f(c);
    for (std::size_t i = 1; i < kNodes.size(); ++i) {
        const double dx = h * kNodes[i];
        acc += kWeights[i] * (f(c - dx) + f(c + dx));
    }
    return acc * h;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole, double tol,
              int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss15(f, a, m);
    const double right = gauss15(f, m, b);
    const double halves = left + right;
    if (depth <= 0 || std::abs(halves - whole) <= tol || m <= a || m >= b) return halves;
    return refine(f, a, m, left, 0.5 * tol, depth - 1) + refine(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts, const std::vector<double>& breaks) {
    if (!(b > a)) return 0.0;
    std::vector<double> pts{a};
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double lo = pts[i];
        const double hi = pts[i + 1];
        const double tol = opts.abs_tol * (hi - lo) / (b - a);
        total += refine(f, lo, hi, gauss15(f, lo, hi), tol, opts.max_depth);
    }
    return total;
}

}  // namespace adaptdet
