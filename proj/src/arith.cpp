#include "primerace/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "primerace/error.hpp"

namespace primerace {

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<PrimePower> factorize(std::int64_t n) {
    if (n < 1) throw InvalidArgument("factorize: n must be >= 1");
    std::vector<PrimePower> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    const auto f = factorize(n);
    return f.size() == 1 && f[0].e == 1;
}

std::int64_t totient(std::int64_t n) {
    std::int64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

int mobius(std::int64_t n) {
    const auto f = factorize(n);
    for (const auto& pp : f)
        if (pp.e > 1) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

double von_mangoldt(std::int64_t n) {
    if (n < 1) throw InvalidArgument("von_mangoldt: n must be >= 1");
    const auto f = factorize(n);
    return f.size() == 1 ? std::log(static_cast<double>(f[0].p)) : 0.0;
}

Modulus::Modulus(std::int64_t q) : q_(q) {
    if (q < 3) throw InvalidArgument("modulus must be >= 3, got " + std::to_string(q));
    factors_ = factorize(q);
    phi_ = totient(q);
    index_.assign(static_cast<std::size_t>(q), -1);
    for (std::int64_t a = 1; a <= q; ++a) {
        if (gcd(a, q) != 1) continue;
        index_[static_cast<std::size_t>(a % q)] = static_cast<int>(reduced_.size());
        reduced_.push_back(a);
    }
}

int Modulus::class_index(std::int64_t v) const { return index_[static_cast<std::size_t>(mod(v, q_))]; }

ResiduePattern::ResiduePattern(Modulus modulus, std::vector<std::int64_t> classes)
    : modulus_(std::move(modulus)), classes_(std::move(classes)) {
    if (classes_.empty()) throw InvalidArgument("pattern must have r >= 1");
    for (auto& a : classes_) {
        if (!modulus_.is_reduced(a))
            throw InvalidArgument("class " + std::to_string(a) + " is not reduced mod " +
                                  std::to_string(modulus_.q()));
        a = modulus_.canonical(a);
    }
}

ResiduePattern ResiduePattern::opposite() const {
    std::vector<std::int64_t> opp(classes_.rbegin(), classes_.rend());
    for (auto& a : opp) a = -a;
    return ResiduePattern(modulus_, std::move(opp));
}

std::string ResiduePattern::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < classes_.size(); ++i) os << (i ? "," : "") << classes_[i];
    os << ')';
    return os.str();
}

double sawtooth_b(const Modulus& q, std::int64_t v) {
    return 0.5 - static_cast<double>(q.canonical(v)) / static_cast<double>(q.q());
}

namespace {

// q * (#{0 < t < h : (t + a, q) = 1}) - phi(q) * h, exact.
std::int64_t scaled_admissible_excess(const Modulus& q, std::int64_t a, std::int64_t h) {
    std::int64_t count = 0;
    for (std::int64_t t = 1; t < h; ++t)
        if (gcd(mod(t + a, q.q()), q.q()) == 1) ++count;
    return q.q() * count - q.phi() * h;
}

}  // namespace

double epsilon_q(const Modulus& q, std::int64_t a, std::int64_t b) {
    if (!q.is_reduced(a) || !q.is_reduced(b)) throw InvalidArgument("epsilon_q: classes must be reduced");
    const std::int64_t h0 = q.canonical(b - a);
    const std::int64_t first = scaled_admissible_excess(q, a, h0);
    const std::int64_t second = scaled_admissible_excess(q, a, h0 + q.q());
    if (first != second) throw ConsistencyError("epsilon_q depends on h; admissible count is broken");
    return static_cast<double>(first) / static_cast<double>(q.q());
}

double pattern_epsilon(const ResiduePattern& pattern) {
    if (pattern.r() < 2) throw InvalidArgument("pattern_epsilon needs r >= 2");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < pattern.r(); ++i) sum += epsilon_q(pattern.modulus(), pattern[i], pattern[i + 1]);
    return sum;
}

int count_repeats(const ResiduePattern& pattern, std::size_t gap) {
    int n = 0;
    for (std::size_t i = 0; i + gap < pattern.r(); ++i)
        if (pattern[i] == pattern[i + gap]) ++n;
    return n;
}

std::vector<ResiduePattern> all_patterns(const Modulus& q, std::size_t r) {
    const auto& cls = q.reduced_classes();
    const std::size_t phi = cls.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= phi;
    std::vector<ResiduePattern> out;
    out.reserve(total);
    std::vector<std::int64_t> tuple(r);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = r; i-- > 0;) {
            tuple[i] = cls[c % phi];
            c /= phi;
        }
        out.emplace_back(q, tuple);
    }
    return out;
}

}  // namespace primerace
