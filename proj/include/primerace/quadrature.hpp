#pragma once

#include <functional>

namespace primerace {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum over accepted panels of |whole - halves|
    long evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    int initial_panels = 16;
    int max_depth = 40;
    int threads = 0;  // <= 0: OpenMP default
};

// Adaptive composite Gauss-Legendre on [a, b]. Each panel is compared against its two
// halves and bisected until the difference is below its share of rel_tol * |estimate|.
// Initial panels run concurrently and are summed in panel order, so the result does not
// depend on the thread count. f must be safe to call from several threads.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

// Same algorithm on one thread.
QuadratureResult integrate_serial(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts = {});

}  // namespace primerace
