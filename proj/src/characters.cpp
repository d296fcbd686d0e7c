#include "primerace/characters.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "primerace/error.hpp"

namespace primerace {

namespace {

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        const std::int64_t t = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - t * a1);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw InvalidArgument("inverse_mod: not invertible");
    return mod(x, m);
}

std::int64_t primitive_root_prime_power(std::int64_t p, int e) {
    const auto pf = factorize(p - 1);
    std::int64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (const auto& f : pf)
            if (pow_mod(g, (p - 1) / f.p, p) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (e >= 2 && pow_mod(g, p - 1, p * p) == 1) g += p;
    return g;
}

}  // namespace

RootOfUnity RootOfUnity::make(std::int64_t num, std::int64_t den) {
    num = mod(num, den);
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

std::complex<double> RootOfUnity::value() const {
    if (num == 0) return {1.0, 0.0};
    // Exact for the half and quarter turns that real characters hit.
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return std::polar(1.0, angle);
}

struct CharacterGroup::Data {
    std::int64_t m = 1;
    std::int64_t phi = 1;
    std::int64_t exponent = 1;
    std::vector<std::int64_t> gens;
    std::vector<std::int64_t> orders;
    std::vector<PrimePower> component;  // prime power each generator belongs to
    std::vector<char> reduced;          // by n mod m
    std::vector<std::int64_t> dlog;     // m * gens.size(), valid where reduced
};

CharacterGroup::CharacterGroup(std::int64_t m) {
    if (m < 1) throw InvalidArgument("character group modulus must be >= 1");
    auto d = std::make_shared<Data>();
    d->m = m;
    d->phi = totient(m);

    for (const auto& [p, e] : factorize(m)) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        const std::int64_t other = m / pe;
        auto lift = [&](std::int64_t x) {
            if (other == 1) return mod(x, pe);
            const std::int64_t t = mul_mod(mod(1 - x, other), inverse_mod(pe, other), other);
            return mod(x + pe * t, m);
        };
        auto add = [&](std::int64_t g, std::int64_t ord) {
            d->gens.push_back(lift(g));
            d->orders.push_back(ord);
            d->component.push_back({p, e});
        };
        if (p != 2) {
            add(primitive_root_prime_power(p, e), pe / p * (p - 1));
        } else if (e == 2) {
            add(3, 2);
        } else if (e >= 3) {
            add(pe - 1, 2);
            add(5, pe / 4);
        }
    }
    for (auto o : d->orders) d->exponent = std::lcm(d->exponent, o);

    const std::size_t ng = d->gens.size();
    d->reduced.assign(static_cast<std::size_t>(m), 0);
    d->dlog.assign(static_cast<std::size_t>(m) * ng, 0);

    std::vector<std::vector<std::int64_t>> powers(ng);
    for (std::size_t i = 0; i < ng; ++i) {
        powers[i].resize(static_cast<std::size_t>(d->orders[i]));
        std::int64_t x = 1 % m;
        for (auto& v : powers[i]) {
            v = x;
            x = mul_mod(x, d->gens[i], m);
        }
    }
    std::vector<std::int64_t> digits(ng, 0);
    for (std::int64_t count = 0; count < d->phi; ++count) {
        std::int64_t n = 1 % m;
        for (std::size_t i = 0; i < ng; ++i) n = mul_mod(n, powers[i][static_cast<std::size_t>(digits[i])], m);
        const auto slot = static_cast<std::size_t>(n);
        if (d->reduced[slot]) throw ConsistencyError("character group generators are not independent");
        d->reduced[slot] = 1;
        for (std::size_t i = 0; i < ng; ++i) d->dlog[slot * ng + i] = digits[i];
        for (std::size_t i = ng; i-- > 0;) {
            if (++digits[i] < d->orders[i]) break;
            digits[i] = 0;
        }
    }
    data_ = std::move(d);
}

std::int64_t CharacterGroup::modulus() const { return data_->m; }
std::int64_t CharacterGroup::order() const { return data_->phi; }
std::int64_t CharacterGroup::exponent() const { return data_->exponent; }
const std::vector<std::int64_t>& CharacterGroup::generators() const { return data_->gens; }
const std::vector<std::int64_t>& CharacterGroup::generator_orders() const { return data_->orders; }
const std::vector<PrimePower>& CharacterGroup::generator_components() const { return data_->component; }

DirichletCharacter CharacterGroup::principal() const {
    return DirichletCharacter(data_, std::vector<std::int64_t>(data_->gens.size(), 0));
}

DirichletCharacter CharacterGroup::character(std::int64_t index) const {
    if (index < 0 || index >= data_->phi) throw InvalidArgument("character index out of range");
    std::vector<std::int64_t> label(data_->gens.size());
    for (std::size_t i = label.size(); i-- > 0;) {
        label[i] = index % data_->orders[i];
        index /= data_->orders[i];
    }
    return DirichletCharacter(data_, std::move(label));
}

DirichletCharacter CharacterGroup::from_label(std::vector<std::int64_t> label) const {
    if (label.size() != data_->gens.size()) throw InvalidArgument("character label has wrong length");
    for (std::size_t i = 0; i < label.size(); ++i) label[i] = mod(label[i], data_->orders[i]);
    return DirichletCharacter(data_, std::move(label));
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(data_->phi));
    for (std::int64_t i = 0; i < data_->phi; ++i) out.push_back(character(i));
    return out;
}

CharacterGroup build_group(const Modulus& q) { return CharacterGroup(q.q()); }

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup::Data> group,
                                       std::vector<std::int64_t> label)
    : group_(std::move(group)), label_(std::move(label)) {}

std::int64_t DirichletCharacter::modulus() const { return group_->m; }

std::int64_t DirichletCharacter::index() const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < label_.size(); ++i) idx = idx * group_->orders[i] + label_[i];
    return idx;
}

std::optional<std::int64_t> DirichletCharacter::exponent_at(std::int64_t n) const {
    const auto slot = static_cast<std::size_t>(mod(n, group_->m));
    if (!group_->reduced[slot]) return std::nullopt;
    const std::size_t ng = label_.size();
    std::int64_t k = 0;
    for (std::size_t i = 0; i < ng; ++i) {
        const std::int64_t ord = group_->orders[i];
        const std::int64_t step = mul_mod(label_[i], group_->dlog[slot * ng + i], ord);
        k = mod(k + step * (group_->exponent / ord), group_->exponent);
    }
    return k;
}

std::optional<RootOfUnity> DirichletCharacter::exact(std::int64_t n) const {
    const auto k = exponent_at(n);
    if (!k) return std::nullopt;
    return RootOfUnity::make(*k, group_->exponent);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
    const auto v = exact(n);
    return v ? v->value() : std::complex<double>{0.0, 0.0};
}

std::vector<std::complex<double>> DirichletCharacter::value_table() const {
    std::vector<std::complex<double>> t(static_cast<std::size_t>(group_->m));
    for (std::int64_t n = 0; n < group_->m; ++n) t[static_cast<std::size_t>(n)] = (*this)(n);
    return t;
}

int DirichletCharacter::parity() const {
    if (group_->m <= 2) return 1;
    return *exponent_at(group_->m - 1) == 0 ? 1 : -1;
}

bool DirichletCharacter::is_principal() const {
    for (auto l : label_)
        if (l != 0) return false;
    return true;
}

bool DirichletCharacter::is_real() const {
    for (std::size_t i = 0; i < label_.size(); ++i)
        if (mod(2 * label_[i], group_->orders[i]) != 0) return false;
    return true;
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<std::int64_t> lab(label_.size());
    for (std::size_t i = 0; i < lab.size(); ++i) lab[i] = mod(-label_[i], group_->orders[i]);
    return DirichletCharacter(group_, std::move(lab));
}

PrimitiveInfo conductor_and_primitive(const DirichletCharacter& chi) {
    const std::int64_t m = chi.modulus();
    const CharacterGroup group(m);
    const auto& gens = group.generators();
    const auto& orders = group.generator_orders();
    const std::int64_t big_e = group.exponent();

    // Conductor one prime-power component at a time: the exponent f_p is one more than the
    // largest p-adic valuation of n - 1 over component elements n with chi(n) != 1.
    std::int64_t conductor = 1;
    for (const auto& [p, e] : factorize(m)) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (group.generator_components()[i].p == p) idx.push_back(i);
        int f = 0;
        std::vector<std::int64_t> digits(idx.size(), 0);
        std::int64_t size = 1;
        for (auto i : idx) size *= orders[i];
        for (std::int64_t c = 0; c < size; ++c) {
            std::int64_t n = 1 % m, k = 0;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                const auto i = idx[j];
                n = mul_mod(n, pow_mod(gens[i], digits[j], m), m);
                k = mod(k + mul_mod(chi.label()[i], digits[j], orders[i]) * (big_e / orders[i]), big_e);
            }
            if (k != 0) {
                std::int64_t diff = mod(n - 1, pe);
                int v = 0;
                if (diff == 0) {
                    v = e;
                } else {
                    while (diff % p == 0) {
                        diff /= p;
                        ++v;
                    }
                }
                f = std::max(f, std::min(v + 1, e));
            }
            for (std::size_t j = idx.size(); j-- > 0;) {
                if (++digits[j] < orders[idx[j]]) break;
                digits[j] = 0;
            }
        }
        for (int i = 0; i < f; ++i) conductor *= p;
    }

    const CharacterGroup prim_group(conductor);
    std::vector<std::int64_t> label(prim_group.generators().size());
    for (std::size_t j = 0; j < label.size(); ++j) {
        std::int64_t n = prim_group.generators()[j];
        while (gcd(mod(n, m), m) != 1) n += conductor;
        const std::int64_t k = *chi.exponent_at(n);
        const std::int64_t ord = prim_group.generator_orders()[j];
        // chi*(g_j) = exp(2 pi i k / E) must be an ord-th root of unity.
        if (mul_mod(k, ord, big_e) != 0) throw ConsistencyError("primitive character lift is not a character");
        label[j] = k * ord / big_e;
    }
    auto prim = prim_group.from_label(std::move(label));
    for (std::int64_t n = 1; n < m; ++n) {
        if (gcd(n, m) != 1) continue;
        if (chi.exact(n) != prim.exact(n)) throw ConsistencyError("primitive character does not induce chi");
    }
    return {conductor, std::move(prim)};
}

}  // namespace primerace
