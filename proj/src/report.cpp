#include "primerace/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "primerace/characters.hpp"
#include "primerace/constants.hpp"
#include "primerace/error.hpp"
#include "primerace/singular.hpp"

#ifndef PRIMERACE_VERSION
#define PRIMERACE_VERSION "dev"
#endif

namespace primerace {

std::string version() { return PRIMERACE_VERSION; }

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw InvalidArgument("table row has the wrong number of cells");
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(std::uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
    } visit;
    return std::visit(visit, c);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

nlohmann::json cell_json(const Cell& c) {
    struct {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(const std::string& s) const { return s; }
        nlohmann::json operator()(std::int64_t v) const { return v; }
        nlohmann::json operator()(std::uint64_t v) const { return v; }
        nlohmann::json operator()(double v) const {
            if (!std::isfinite(v)) return nullptr;
            return std::stod(format_number(v));
        }
    } visit;
    return std::visit(visit, c);
}

std::string complex_part(double v) { return format_number(v == 0.0 ? 0.0 : v); }

}  // namespace

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_number(value)); }

std::string Manifest::render() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
    return out;
}

Table count_table(const CountTable& counts) {
    Table t{{"pattern", "count"}, {}};
    const auto patterns = all_patterns(counts.modulus, static_cast<std::size_t>(counts.config.r));
    for (std::size_t i = 0; i < patterns.size(); ++i) t.add({patterns[i].to_string(), counts.counts[i]});
    return t;
}

Table prediction_table(const std::vector<PredictionRow>& rows) {
    Table t{{"pattern", "value", "method", "error_estimate"}, {}};
    for (const auto& row : rows) {
        Cell err;
        if (row.method == PredictionMethod::integral) err = row.quadrature_error_estimate;
        t.add({row.pattern.to_string(), row.value, to_string(row.method), err});
    }
    return t;
}

Table constants_table(const Modulus& q, int r, std::int64_t truncation) {
    if (r < 2) throw InvalidArgument("constants need r >= 2");
    Table t{{"pattern", "c1", "c2"}, {}};
    for (const auto& p : all_patterns(q, static_cast<std::size_t>(r))) t.add({p.to_string(), c1(p), c2(p, truncation)});
    return t;
}

Table characters_table(const Modulus& q) {
    Table t{{"character", "parity", "conductor", "n", "re", "im", "exact"}, {}};
    const auto group = build_group(q);
    for (const auto& chi : group.characters()) {
        const auto info = conductor_and_primitive(chi);
        for (std::int64_t n = 0; n < q.q(); ++n) {
            const auto v = chi(n);
            const auto e = chi.exact(n);
            const std::string exact = e ? std::to_string(e->num) + "/" + std::to_string(e->den) : "";
            t.add({chi.index(), static_cast<std::int64_t>(chi.parity()), info.conductor, n, complex_part(v.real()),
                   complex_part(v.imag()), exact});
        }
    }
    return t;
}

Table lvalues_table(std::int64_t q, std::int64_t m, std::int64_t truncation) {
    const auto table = build_ctable(q, m, truncation);
    Table t{{"m", "character", "parity", "l0_re", "l0_im", "l1_re", "l1_im", "a_re", "a_im", "c_re", "c_im",
             "tail_bound"},
            {}};
    for (const auto& e : table.entries)
        t.add({m, e.chi.index(), static_cast<std::int64_t>(e.chi.parity()), complex_part(e.l0.real()),
               complex_part(e.l0.imag()), complex_part(e.l1.real()), complex_part(e.l1.imag()),
               complex_part(e.a.real()), complex_part(e.a.imag()), complex_part(e.c.real()),
               complex_part(e.c.imag()), table.tail_bound});
    return t;
}

Table s0_table(const S0Request& req) {
    const Modulus q(req.q);
    Table t{{"q", "v", "H", "k", "method", "value", "cutoff", "tail_estimate"}, {}};
    double b = 0.0, a = 0.0;
    if (req.brute) {
        const SingularContext ctx(q);
        const auto s = s0_brute(ctx, req.v, req.H, req.k, req.threads);
        b = s.value;
        t.add({q.q(), s.v, req.H, static_cast<std::int64_t>(req.k), std::string("brute"), s.value, s.cutoff,
               s.tail_estimate});
    }
    if (req.analytic) {
        const auto s = s0_analytic(q, req.v, req.H, req.k);
        a = s.value;
        t.add({q.q(), s.v, req.H, static_cast<std::int64_t>(req.k), std::string("analytic"), s.value, Cell{},
               Cell{}});
    }
    if (req.brute && req.analytic)
        t.add({q.q(), q.canonical(req.v), req.H, static_cast<std::int64_t>(req.k), std::string("difference"), b - a,
               Cell{}, Cell{}});
    return t;
}

CompareResult compare(const CompareRequest& req) {
    SieveConfig c;
    c.mode = req.mode;
    c.limit = req.limit;
    c.q = req.q;
    c.r = req.r;
    c.threads = req.threads;
    CompareResult out{{{"pattern", "actual", "integral_prediction", "asymptotic_prediction", "rel_err_integral",
                        "rel_err_asymptotic"},
                       {}},
                      0.0,
                      count_patterns(c)};
    out.x = req.mode == LimitMode::by_x ? static_cast<double>(req.limit) : static_cast<double>(out.counts.last_start);
    const Modulus& q = out.counts.modulus;
    const auto patterns = all_patterns(q, static_cast<std::size_t>(req.r));
    IntegralOptions io;
    io.threads = req.threads;
    io.truncation = req.truncation;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto actual = out.counts.counts[i];
        Cell integral, asym, err_i, err_a;
        if (req.integral && req.r == 2) {
            const double v = integral_prediction(q, patterns[i][0], patterns[i][1], out.x, io).value;
            integral = v;
            if (actual) err_i = v / static_cast<double>(actual) - 1.0;
        }
        if (req.asymptotic) {
            const double v = asymptotic_prediction(patterns[i], out.x).value;
            asym = v;
            if (actual) err_a = v / static_cast<double>(actual) - 1.0;
        }
        out.table.add({patterns[i].to_string(), actual, integral, asym, err_i, err_a});
    }
    return out;
}

}  // namespace primerace
