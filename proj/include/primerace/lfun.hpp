#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "primerace/arith.hpp"
#include "primerace/characters.hpp"

namespace primerace {

// Largest prime used in Euler products over p not dividing q.
inline constexpr std::int64_t kDefaultTruncation = 20'000'000;

double digamma(double x);

// L(0, chi) = -(1/m) sum_{a=1}^{m} chi(a) a; exactly zero for even chi.
std::complex<double> l_at_zero(const DirichletCharacter& chi);
// L(1, chi) = -(1/m) sum_{a=1}^{m-1} chi(a) psi(a/m).
std::complex<double> l_at_one(const DirichletCharacter& chi);

struct EulerProduct {
    std::complex<double> value;
    double tail_bound = 0.0;  // bound on the relative error from primes > truncation
    std::int64_t truncation = 0;
};

// Upper bound for sum_{p > P} 4 / (p - 1)^2.
double euler_tail_bound(std::int64_t truncation);

// A_{q,chi} = prod_{p | q} (1 - chi(p)/p) * prod_{p !| q} (1 - (1 - chi(p))^2 / (p - 1)^2).
// q may be any positive integer here; the modulus of chi must divide q.
EulerProduct a_q_chi(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation = kDefaultTruncation);

// C_{q,chi} = L(0,chi) L(1,chi) A_{q,chi}, computed directly for chi as given.
std::complex<double> c_q_chi(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation = kDefaultTruncation);

// The same constant through the primitive character inducing chi and, when q is even
// and the conductor odd, through the odd part of q.
std::complex<double> reduce_c(std::int64_t q, const DirichletCharacter& chi, std::int64_t truncation = kDefaultTruncation);

struct CEntry {
    DirichletCharacter chi;
    std::complex<double> l0;
    std::complex<double> l1;
    std::complex<double> a;
    std::complex<double> c;
};

// Every non-principal character modulo m (m | q) with its L-values and C_{q,chi}.
struct CTable {
    std::int64_t q = 0;
    std::int64_t m = 0;
    std::vector<CEntry> entries;
    std::int64_t truncation = 0;
    double tail_bound = 0.0;
};

CTable build_ctable(std::int64_t q, std::int64_t m, std::int64_t truncation = kDefaultTruncation);

}  // namespace primerace
