#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primerace/arith.hpp"
#include "primerace/lfun.hpp"

namespace primerace {

// li(x) = int_2^x dt / log t, x >= 2.
double li(double x);

enum class PredictionMethod { asymptotic, integral };
std::string to_string(PredictionMethod m);

struct PredictionRow {
    PredictionRow(ResiduePattern p, double x_, PredictionMethod m = PredictionMethod::asymptotic)
        : pattern(std::move(p)), x(x_), method(m) {}

    ResiduePattern pattern;
    double x = 0.0;
    PredictionMethod method = PredictionMethod::asymptotic;
    int skip = 1;
    double value = 0.0;
    // asymptotic: value = main * (1 + loglog_term + log_term), with
    // loglog_term = c1 loglog x / log x and log_term = c2 / log x.
    double main = 0.0;
    double loglog_term = 0.0;
    double log_term = 0.0;
    // integral only
    double quadrature_error_estimate = 0.0;
    double y_min = 0.0;
    std::vector<std::string> notes;
};

PredictionRow asymptotic_prediction(const ResiduePattern& pattern, double x);

enum class DensityMethod { semi_analytic, brute };

struct DensityTerms {
    double y = 0.0;
    double alpha = 0.0;
    double H = 0.0;
    double D0 = 0.0, D1 = 0.0, D2 = 0.0;
    DensityMethod method = DensityMethod::semi_analytic;
    std::int64_t cutoff = 0;  // brute only

    double total() const { return D0 + D1 + D2; }
};

// alpha(y) = 1 - q / (phi(q) log y) and H = -(q/phi(q)) / log alpha; throws if alpha <= 0.
double density_alpha(const Modulus& q, double y);
double density_h(const Modulus& q, double y);

// Direct truncated sums over h <= cutoff (and the interior t's). cutoff <= 0 means ceil(50 H).
DensityTerms density_terms_brute(const Modulus& q, std::int64_t a, std::int64_t b, double y, std::int64_t cutoff = 0);

// Where the semi-analytic form takes S0(q,v;H) from.
enum class S0Source { main_terms, brute };

// Geometric sums in closed form, S0(q,v;H) by its main terms (or by s0_brute).
DensityTerms density_terms_semianalytic(const Modulus& q, std::int64_t a, std::int64_t b, double y,
                                        S0Source source = S0Source::main_terms);

struct IntegralOptions {
    double rel_tol = 1e-7;
    int threads = 0;
    std::int64_t truncation = kDefaultTruncation;
};

// Lower end of the integral: log y_min = 2q/phi(q), where alpha = 1/2.
double integral_y_min(const Modulus& q);

// q/phi^2 int_{y_min}^x alpha^eps (D0+D1+D2) dy / log^2 y, with u = log y.
PredictionRow integral_prediction(const Modulus& q, std::int64_t a, std::int64_t b, double x,
                                  const IntegralOptions& opts = {});

// x / (4 log^2 x) * log((2 pi / q) log x), q in {3, 4}.
double always_bias_difference(std::int64_t q, double x);
// -x / (2 log^2 x) * log(2 pi log x / q), q an odd prime.
double quad_residue_sum_prediction(std::int64_t q, double x);

// li(x)/phi^2 * (1 + c2/log x) for p_n = a, p_{n+k} = b (mod q), k >= 2.
PredictionRow skip_prediction(const Modulus& q, std::int64_t a, std::int64_t b, int k, double x);

}  // namespace primerace
