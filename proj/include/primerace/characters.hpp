#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "primerace/arith.hpp"

namespace primerace {

// exp(2 pi i num / den), normalized so 0 <= num < den and gcd(num, den) = 1.
struct RootOfUnity {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static RootOfUnity make(std::int64_t num, std::int64_t den);
    std::complex<double> value() const;
    bool operator==(const RootOfUnity&) const = default;
};

class DirichletCharacter;

// (Z/m)^x as a product of cyclic groups with CRT-lifted generators.
class CharacterGroup {
public:
    // Any m >= 1. Modulus-checked construction goes through build_group().
    explicit CharacterGroup(std::int64_t m);

    std::int64_t modulus() const;
    std::int64_t order() const;     // phi(m)
    std::int64_t exponent() const;  // lcm of generator orders
    const std::vector<std::int64_t>& generators() const;
    const std::vector<std::int64_t>& generator_orders() const;
    // Prime power of the CRT component each generator lives in.
    const std::vector<PrimePower>& generator_components() const;

    DirichletCharacter principal() const;
    DirichletCharacter character(std::int64_t index) const;  // 0 <= index < order()
    DirichletCharacter from_label(std::vector<std::int64_t> label) const;
    std::vector<DirichletCharacter> characters() const;

    struct Data;

private:
    std::shared_ptr<const Data> data_;
};

CharacterGroup build_group(const Modulus& q);

class DirichletCharacter {
public:
    std::int64_t modulus() const;
    const std::vector<std::int64_t>& label() const { return label_; }
    std::int64_t index() const;

    // Exponent k with chi(n) = exp(2 pi i k / E), E the group exponent; nullopt when gcd(n, m) > 1.
    std::optional<std::int64_t> exponent_at(std::int64_t n) const;
    std::optional<RootOfUnity> exact(std::int64_t n) const;
    std::complex<double> operator()(std::int64_t n) const;

    // Values at 0..m-1.
    std::vector<std::complex<double>> value_table() const;

    int parity() const;  // chi(-1) as +1 / -1
    bool is_odd() const { return parity() < 0; }
    bool is_principal() const;
    bool is_real() const;
    DirichletCharacter conj() const;

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const CharacterGroup::Data> group, std::vector<std::int64_t> label);

    std::shared_ptr<const CharacterGroup::Data> group_;
    std::vector<std::int64_t> label_;
};

struct PrimitiveInfo {
    std::int64_t conductor;
    DirichletCharacter primitive;  // character mod conductor inducing chi
};

PrimitiveInfo conductor_and_primitive(const DirichletCharacter& chi);

}  // namespace primerace
