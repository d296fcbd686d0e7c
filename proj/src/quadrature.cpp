#include "primerace/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <omp.h>

#include "primerace/error.hpp"

namespace primerace {

namespace {

constexpr int kOrder = 15;

struct Rule {
    std::array<double, kOrder> x{};
    std::array<double, kOrder> w{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
Rule make_rule() {
    Rule r;
    for (int i = 0; i < kOrder; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= kOrder; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

const Rule& rule() {
    static const Rule r = make_rule();
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b, long& evals) {
    const Rule& r = rule();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kOrder; ++i) s += r.w[i] * f(mid + half * r.x[i]);
    evals += kOrder;
    return s * half;
}

struct Partial {
    double value = 0.0;
    double error = 0.0;
    long evals = 0;
};

void refine(const std::function<double(double)>& f, double a, double b, double whole, double tol, int depth,
            int max_depth, Partial& out) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid, out.evals);
    const double right = panel(f, mid, b, out.evals);
    const double diff = std::abs(left + right - whole);
    if (diff <= tol || depth >= max_depth || !std::isfinite(diff)) {
        out.value += left + right;
        out.error += diff;
        return;
    }
    refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
    refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

QuadratureResult run(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts,
                     bool parallel) {
    if (!(b >= a)) throw InvalidArgument("integrate: need a <= b");
    if (opts.initial_panels < 1 || !(opts.rel_tol > 0.0)) throw InvalidArgument("integrate: bad options");
    QuadratureResult res;
    if (a == b) return res;
    const int n = opts.initial_panels;
    const double width = (b - a) / n;
    std::vector<double> coarse(static_cast<std::size_t>(n));
    std::vector<Partial> parts(static_cast<std::size_t>(n));
    const int threads = parallel ? (opts.threads > 0 ? opts.threads : omp_get_max_threads()) : 1;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * width, hi = (i + 1 == n) ? b : a + (i + 1) * width;
        coarse[static_cast<std::size_t>(i)] = panel(f, lo, hi, parts[static_cast<std::size_t>(i)].evals);
    }
    double estimate = 0.0;
    for (const double c : coarse) estimate += std::abs(c);
    const double tol = opts.rel_tol * estimate / n;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (int i = 0; i < n; ++i) {
        const double lo = a + i * width, hi = (i + 1 == n) ? b : a + (i + 1) * width;
        refine(f, lo, hi, coarse[static_cast<std::size_t>(i)], tol, 0, opts.max_depth,
               parts[static_cast<std::size_t>(i)]);
    }
    for (const auto& p : parts) {
        res.value += p.value;
        res.error_estimate += p.error;
        res.evaluations += p.evals;
    }
    return res;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
    return run(f, a, b, opts, true);
}

QuadratureResult integrate_serial(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts) {
    return run(f, a, b, opts, false);
}

}  // namespace primerace
