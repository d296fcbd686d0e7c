#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace primerace {

struct PrimePower {
    std::int64_t p;
    int e;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t m);  // result in [0, m)

// Trial-division factorization; inputs here are small (moduli, gaps, divisors).
std::vector<PrimePower> factorize(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
bool is_prime(std::int64_t n);

std::int64_t totient(std::int64_t n);
int mobius(std::int64_t n);
double von_mangoldt(std::int64_t n);

// A modulus q >= 3 together with its reduced residue system, represented in [1, q].
class Modulus {
public:
    explicit Modulus(std::int64_t q);

    std::int64_t q() const { return q_; }
    std::int64_t phi() const { return phi_; }
    const std::vector<std::int64_t>& reduced_classes() const { return reduced_; }
    const std::vector<PrimePower>& factors() const { return factors_; }

    // Canonical representative in [1, q]; v = 0 maps to q.
    std::int64_t canonical(std::int64_t v) const { return mod(v - 1, q_) + 1; }
    bool is_reduced(std::int64_t v) const { return gcd(mod(v, q_), q_) == 1; }
    // Position of a reduced class in reduced_classes(), or -1.
    int class_index(std::int64_t v) const;

    bool operator==(const Modulus& o) const { return q_ == o.q_; }

private:
    std::int64_t q_;
    std::int64_t phi_;
    std::vector<std::int64_t> reduced_;
    std::vector<PrimePower> factors_;
    std::vector<int> index_;  // size q, by v mod q
};

// An r-tuple of reduced classes modulo q.
class ResiduePattern {
public:
    ResiduePattern(Modulus modulus, std::vector<std::int64_t> classes);

    const Modulus& modulus() const { return modulus_; }
    std::span<const std::int64_t> classes() const { return classes_; }
    std::int64_t operator[](std::size_t i) const { return classes_[i]; }
    std::size_t r() const { return classes_.size(); }

    // (-a_r, ..., -a_1)
    ResiduePattern opposite() const;
    std::string to_string() const;  // "(a1,a2,...)"

private:
    Modulus modulus_;
    std::vector<std::int64_t> classes_;
};

// B_q(v) = 1/2 - v/q for v in [1, q], extended with period q.
double sawtooth_b(const Modulus& q, std::int64_t v);

// #{0 < t < h : (t + a, q) = 1} - phi(q) h / q for any h > 0 with h = b - a (mod q).
// The value is a rational with denominator q; it is not an integer in general.
double epsilon_q(const Modulus& q, std::int64_t a, std::int64_t b);

// Sum of epsilon_q over adjacent entries; needs r >= 2.
double pattern_epsilon(const ResiduePattern& pattern);

// Number of adjacent repeats a_i = a_{i+1}, and more generally a_i = a_{i+gap}.
int count_repeats(const ResiduePattern& pattern, std::size_t gap = 1);

// Every r-tuple of reduced classes in lexicographic order of class index.
std::vector<ResiduePattern> all_patterns(const Modulus& q, std::size_t r);

}  // namespace primerace
