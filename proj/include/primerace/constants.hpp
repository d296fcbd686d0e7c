#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "primerace/arith.hpp"
#include "primerace/lfun.hpp"
#include "primerace/singular.hpp"

namespace primerace {

// The closed forms available for c_2(q;(a,b)).
enum class C2Method {
    s0c_sums,       // S0^c sums over residue classes (the constant-term bookkeeping form)
    odd_character,  // sums of C_{q,chi} over odd characters modulo every d | q
    reduced,        // Moebius sum over d | q0 with C_{q0,chi}; the default
    diagonal,       // a = b only
    prime_q,        // q prime, a != b only
};

std::string to_string(C2Method m);

// Pairwise tolerance for agreement among the c_2 forms.
inline constexpr double kC2Agreement = 1e-8;

// Everything modulus-dependent that c_1 / c_2 / predictions need: S0^c(q, v) for all v and
// the C_{q,chi} tables. Immutable once constructed.
class ConstantsTable {
public:
    explicit ConstantsTable(const Modulus& q, std::int64_t truncation = kDefaultTruncation);

    const Modulus& modulus() const { return q_; }
    std::int64_t truncation() const { return truncation_; }

    // S0^c(q, v), any integer v.
    double s0c(std::int64_t v) const;
    // Table for characters modulo m | q with the Euler product taken relative to q.
    const CTable& ctable(std::int64_t m) const;
    // Same, relative to the odd part q0 of q (only m | q0).
    const CTable& ctable_odd_part(std::int64_t m) const;

    // c_2(q;(a,b)) by one specific form; throws InvalidArgument if the form does not apply.
    double c2_by(C2Method method, std::int64_t a, std::int64_t b) const;
    std::vector<C2Method> applicable_methods(std::int64_t a, std::int64_t b) const;
    // The reduced form, after checking every applicable form agrees within kC2Agreement.
    double c2_pair(std::int64_t a, std::int64_t b) const;

private:
    double s0c_nonzero(std::int64_t v) const;
    double c2_s0c_sums(std::int64_t a, std::int64_t b) const;
    double c2_odd_character(std::int64_t a, std::int64_t b) const;
    double c2_reduced(std::int64_t a, std::int64_t b) const;
    double c2_diagonal() const;
    double c2_prime_q(std::int64_t a, std::int64_t b) const;

    Modulus q_;
    std::int64_t truncation_;
    std::int64_t q0_;
    std::map<std::int64_t, CTable> tables_;      // by m | q
    std::map<std::int64_t, CTable> odd_tables_;  // by m | q0, relative to q0
    std::vector<double> s0c_;                     // index v mod q
};

// Shared, lazily built table per (q, truncation).
std::shared_ptr<const ConstantsTable> constants_for(const Modulus& q, std::int64_t truncation = kDefaultTruncation);

struct ConjectureConstants {
    ResiduePattern pattern;
    double c1 = 0.0;
    double c2 = 0.0;
    C2Method c2_method = C2Method::reduced;
    std::vector<double> s0c;  // S0^c(q, v) for v = 1..q
};

double s0c(const Modulus& q, std::int64_t v);
double c1(const ResiduePattern& pattern);
double c2_pair(const Modulus& q, std::int64_t a, std::int64_t b, std::int64_t truncation = kDefaultTruncation);
// log 2pi - phi(q) Lambda(q/(q,b-a)) / phi(q/(q,b-a)); also checked against c2_pair(a,b)+c2_pair(b,a).
double c2_symmetric_sum(const Modulus& q, std::int64_t a, std::int64_t b);
// r >= 3 assembly from pair constants and the non-adjacent repeat counts.
double c2_general(const ResiduePattern& pattern, std::int64_t truncation = kDefaultTruncation);
// c2_pair for r = 2, c2_general for r >= 3.
double c2(const ResiduePattern& pattern, std::int64_t truncation = kDefaultTruncation);
ConjectureConstants conjecture_constants(const ResiduePattern& pattern);

// Main terms of S0^k(q,v;H): for k = 0, S0^c(q,v) - (phi/2q) log H when v = 0 and S0^c(q,v)
// otherwise; for k >= 1, -(phi/2q) Gamma(k) H^k when v = 0 and 0 otherwise.
S0Sum s0_analytic(const Modulus& q, std::int64_t v, double H, int k = 0);

struct SkipCoefficients {
    double c1 = 0.0;
    double c2 = 0.0;
};

// Coefficients for p_n = a, p_{n+k} = b (mod q) with k >= 2.
SkipCoefficients skip_coefficient(const Modulus& q, std::int64_t a, std::int64_t b, int k);

}  // namespace primerace
