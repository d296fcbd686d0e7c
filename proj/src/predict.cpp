#include "primerace/predict.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "primerace/constants.hpp"
#include "primerace/error.hpp"
#include "primerace/quadrature.hpp"
#include "primerace/singular.hpp"

namespace primerace {

namespace {

std::shared_ptr<const SingularContext> singular_for(const Modulus& q) {
    static std::mutex lock;
    static std::map<std::int64_t, std::shared_ptr<const SingularContext>> cache;
    std::scoped_lock guard(lock);
    auto& slot = cache[q.q()];
    if (!slot) slot = std::make_shared<const SingularContext>(q);
    return slot;
}

void check_pair(const Modulus& q, std::int64_t a, std::int64_t b) {
    if (!q.is_reduced(a) || !q.is_reduced(b)) throw InvalidArgument("pattern classes must be reduced mod q");
}

struct Scale {
    double alpha, H, lambda;
};

Scale scale_at(const Modulus& q, double y) {
    const double ratio = static_cast<double>(q.q()) / static_cast<double>(q.phi());
    const double ly = std::log(y);
    const double alpha = 1.0 - ratio / ly;
    if (!(alpha > 0.0)) throw InvalidArgument("alpha(y) <= 0: y is too small for this modulus");
    return {alpha, -ratio / std::log(alpha), ratio / (alpha * ly)};
}

// Semi-analytic D-terms given S[w] ~ S0(q,w;H) for w = 0..q-1.
DensityTerms semi_terms(const Modulus& q, std::int64_t a, std::int64_t b, double y, const Scale& sc,
                        const std::vector<double>& S) {
    const std::int64_t n = q.q();
    const double den = -std::expm1(-static_cast<double>(n) / sc.H);
    const auto g = [&](std::int64_t delta) { return std::exp(-static_cast<double>(delta) / sc.H) / den; };
    const std::int64_t v = mod(b - a, n);
    // least positive h = v - w (mod q)
    const auto delta = [&](std::int64_t w) { return mod(v - w - 1, n) + 1; };

    DensityTerms out;
    out.y = y;
    out.alpha = sc.alpha;
    out.H = sc.H;
    out.method = DensityMethod::semi_analytic;
    out.D0 = g(v == 0 ? n : v) + S[static_cast<std::size_t>(v)];

    double d1 = 0.0;
    for (std::int64_t w = 0; w < n; ++w) {
        const int mult = (gcd(mod(w + a, n), n) == 1) + (gcd(mod(b - w, n), n) == 1);
        if (mult) d1 += mult * g(delta(w)) * S[static_cast<std::size_t>(w)];
    }
    out.D1 = -sc.lambda * d1;

    double d2 = 0.0;
    for (std::int64_t w = 0; w < n; ++w) {
        double k = 0.0;
        for (std::int64_t u = 0; u < n; ++u) {
            if (gcd(mod(u + a, n), n) != 1 || gcd(mod(u + w + a, n), n) != 1) continue;
            k += g(u == 0 ? n : u) * g(delta(mod(u + w, n)));
        }
        d2 += k * S[static_cast<std::size_t>(w)];
    }
    out.D2 = sc.lambda * sc.lambda * d2;
    return out;
}

std::vector<double> s0_main_terms(const ConstantsTable& table, double H) {
    const Modulus& q = table.modulus();
    std::vector<double> S(static_cast<std::size_t>(q.q()));
    for (std::int64_t w = 0; w < q.q(); ++w) S[static_cast<std::size_t>(w)] = table.s0c(w);
    S[0] -= static_cast<double>(q.phi()) / (2.0 * static_cast<double>(q.q())) * std::log(H);
    return S;
}

}  // namespace

double li(double x) {
    if (!(x >= 2.0)) throw InvalidArgument("li: x must be >= 2");
    if (x == 2.0) return 0.0;
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.threads = 1;
    return integrate_serial([](double u) { return std::exp(u) / u; }, std::log(2.0), std::log(x), opts).value;
}

std::string to_string(PredictionMethod m) { return m == PredictionMethod::asymptotic ? "asymptotic" : "integral"; }

PredictionRow asymptotic_prediction(const ResiduePattern& pattern, double x) {
    if (pattern.r() < 2) throw InvalidArgument("asymptotic_prediction needs r >= 2");
    if (!(x >= 10.0)) throw InvalidArgument("asymptotic_prediction needs x >= 10");
    PredictionRow row(pattern, x);
    const double L = std::log(x);
    row.main = li(x) / std::pow(static_cast<double>(pattern.modulus().phi()), static_cast<double>(pattern.r()));
    row.loglog_term = c1(pattern) * std::log(L) / L;
    row.log_term = c2(pattern) / L;
    row.value = row.main * (1.0 + row.loglog_term + row.log_term);
    if (x < 1e6) row.notes.push_back("x below 1e6: secondary terms are not yet in their asymptotic regime");
    return row;
}

double density_alpha(const Modulus& q, double y) { return scale_at(q, y).alpha; }
double density_h(const Modulus& q, double y) { return scale_at(q, y).H; }

DensityTerms density_terms_brute(const Modulus& q, std::int64_t a, std::int64_t b, double y, std::int64_t cutoff) {
    check_pair(q, a, b);
    const Scale sc = scale_at(q, y);
    const std::int64_t min_cutoff = static_cast<std::int64_t>(std::ceil(kS0CutoffFactor * sc.H));
    if (cutoff <= 0) cutoff = min_cutoff;
    if (cutoff < min_cutoff) throw InvalidArgument("density_terms_brute: cutoff must be >= 50 H");
    if (cutoff > 2'000'000) throw ResourceLimit("density_terms_brute: cutoff too large for O(cutoff^2) sums");

    const auto ctx = singular_for(q);
    const std::int64_t n = q.q();
    const std::int64_t v = mod(b - a, n);
    const auto N = static_cast<std::size_t>(cutoff);
    std::vector<double> s0(N + 1, 0.0), e(N + 1, 0.0), tail(N + 1, 0.0);
    std::vector<char> ok(N + 1, 0);
    for (std::size_t h = 1; h <= N; ++h) {
        s0[h] = singular_pair_0(*ctx, static_cast<std::int64_t>(h));
        e[h] = std::exp(-static_cast<double>(h) / sc.H);
        ok[h] = gcd(mod(static_cast<std::int64_t>(h) + a, n), n) == 1;
    }
    // tail[t] = sum over h = v (mod q), t < h <= cutoff of e^{-h/H}
    for (std::size_t t = N; t-- > 0;) tail[t] = tail[t + 1] + (mod(static_cast<std::int64_t>(t + 1), n) == v ? e[t + 1] : 0.0);

    DensityTerms out;
    out.y = y;
    out.alpha = sc.alpha;
    out.H = sc.H;
    out.method = DensityMethod::brute;
    out.cutoff = cutoff;

    double d0 = 0.0, d1 = 0.0, d2 = 0.0;
    for (std::size_t h = 1; h <= N; ++h) {
        if (mod(static_cast<std::int64_t>(h), n) != v) continue;
        d0 += (1.0 + s0[h]) * e[h];
        // S_{q,0}({t,h}) over admissible interior t
        double inner = 0.0;
        for (std::size_t t = 1; t < h; ++t)
            if (ok[t]) inner += s0[h - t];
        d1 += e[h] * inner;
    }
    // S_{q,0}({0,t}) over admissible t, weighted by the h beyond t
    for (std::size_t t = 1; t <= N; ++t)
        if (ok[t]) d1 += s0[t] * tail[t];
    // S_{q,0}({t1,t2}) with t2 = t1 + s, both admissible, h beyond t2
    for (std::size_t s = 1; s < N; ++s) {
        double inner = 0.0;
        for (std::size_t t1 = 1; t1 + s <= N; ++t1)
            if (ok[t1] && ok[t1 + s]) inner += tail[t1 + s];
        d2 += s0[s] * inner;
    }
    out.D0 = d0;
    out.D1 = -sc.lambda * d1;
    out.D2 = sc.lambda * sc.lambda * d2;
    return out;
}

DensityTerms density_terms_semianalytic(const Modulus& q, std::int64_t a, std::int64_t b, double y, S0Source source) {
    check_pair(q, a, b);
    const Scale sc = scale_at(q, y);
    std::vector<double> S;
    if (source == S0Source::main_terms) {
        S = s0_main_terms(*constants_for(q), sc.H);
    } else {
        const auto ctx = singular_for(q);
        for (std::int64_t w = 0; w < q.q(); ++w) S.push_back(s0_brute(*ctx, w, sc.H).value);
    }
    return semi_terms(q, a, b, y, sc, S);
}

double integral_y_min(const Modulus& q) {
    return std::exp(2.0 * static_cast<double>(q.q()) / static_cast<double>(q.phi()));
}

PredictionRow integral_prediction(const Modulus& q, std::int64_t a, std::int64_t b, double x,
                                  const IntegralOptions& opts) {
    check_pair(q, a, b);
    const double u_min = 2.0 * static_cast<double>(q.q()) / static_cast<double>(q.phi());
    if (!(x >= 1e4)) throw InvalidArgument("integral_prediction needs x >= 1e4");
    if (!(std::log(x) > u_min)) throw InvalidArgument("integral_prediction: x is below y_min for this modulus");

    const auto table = constants_for(q, opts.truncation);
    const double eps = epsilon_q(q, a, b);
    const double phi = static_cast<double>(q.phi());
    const double pref = static_cast<double>(q.q()) / (phi * phi);
    const auto f = [&](double u) {
        const double y = std::exp(u);
        const Scale sc = scale_at(q, y);
        const auto d = semi_terms(q, a, b, y, sc, s0_main_terms(*table, sc.H));
        return pref * std::pow(sc.alpha, eps) / (u * u) * d.total() * y;
    };
    QuadratureOptions qo;
    qo.rel_tol = opts.rel_tol;
    qo.threads = opts.threads;
    qo.initial_panels = 32;
    const auto res = integrate(f, u_min, std::log(x), qo);

    PredictionRow row(ResiduePattern(q, {a, b}), x, PredictionMethod::integral);
    row.value = res.value;
    row.quadrature_error_estimate = res.error_estimate;
    row.y_min = std::exp(u_min);
    if (res.error_estimate > opts.rel_tol * std::abs(res.value))
        row.notes.push_back("quadrature error estimate exceeds the requested tolerance");
    return row;
}

double always_bias_difference(std::int64_t q, double x) {
    if (q != 3 && q != 4) throw InvalidArgument("always_bias_difference: q must be 3 or 4");
    if (!(x >= 10.0)) throw InvalidArgument("always_bias_difference: x must be >= 10");
    const double L = std::log(x);
    return x / (4.0 * L * L) * std::log(2.0 * std::numbers::pi / static_cast<double>(q) * L);
}

double quad_residue_sum_prediction(std::int64_t q, double x) {
    if (q < 3 || !is_prime(q)) throw InvalidArgument("quad_residue_sum_prediction: q must be an odd prime");
    if (!(x >= 10.0)) throw InvalidArgument("quad_residue_sum_prediction: x must be >= 10");
    const double L = std::log(x);
    return -x / (2.0 * L * L) * std::log(2.0 * std::numbers::pi * L / static_cast<double>(q));
}

PredictionRow skip_prediction(const Modulus& q, std::int64_t a, std::int64_t b, int k, double x) {
    const auto coeff = skip_coefficient(q, a, b, k);
    if (!(x >= 10.0)) throw InvalidArgument("skip_prediction needs x >= 10");
    PredictionRow row(ResiduePattern(q, {a, b}), x);
    row.skip = k;
    const double phi = static_cast<double>(q.phi());
    const double L = std::log(x);
    row.main = li(x) / (phi * phi);
    row.loglog_term = coeff.c1 * std::log(L) / L;
    row.log_term = coeff.c2 / L;
    row.value = row.main * (1.0 + row.loglog_term + row.log_term);
    return row;
}

}  // namespace primerace
