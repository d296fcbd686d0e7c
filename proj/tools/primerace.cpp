// primerace: counts of consecutive-prime residue patterns and their predictions.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "primerace/constants.hpp"
#include "primerace/error.hpp"
#include "primerace/predict.hpp"
#include "primerace/report.hpp"
#include "primerace/sieve.hpp"
#include "primerace/singular.hpp"

using namespace primerace;

namespace {

enum Exit { ok = 0, other = 1, invalid = 2, consistency = 3, resource = 4 };

struct Output {
    std::string path;
    std::string format = "csv";
};

void add_output(CLI::App* app, Output& out) {
    app->add_option("--output,-o", out.path, "write here instead of stdout; PATH.manifest is written alongside");
    app->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void emit(const Table& t, const Output& out, Manifest manifest, double seconds) {
    const std::string body = out.format == "json" ? to_json(t) : to_csv(t);
    if (out.path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out.path);
    f << body;
    manifest.set("wall_time_s", seconds);
    std::ofstream m(out.path + ".manifest", std::ios::binary);
    m << manifest.render();
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidArgument("not a number: " + s);
    return v;
}

// Integer given as digits or in e-notation (1e9).
std::uint64_t parse_count(const std::string& s) {
    const double v = parse_real(s);
    if (!(v >= 0.0) || v > 1.8e19 || v != std::floor(v)) throw InvalidArgument("not a nonnegative integer: " + s);
    if (s.find_first_of("eE.") == std::string::npos) return std::stoull(s);
    return static_cast<std::uint64_t>(v);
}

// key=value lines; keys are long option names. Only keys absent from the command line are
// used, so flags always win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot read config file " + path);
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw InvalidArgument("config line without '=': " + line);
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (given.count(key)) continue;
        if (value == "true") {
            args.push_back("--" + key);
        } else if (value != "false") {
            args.push_back("--" + key);
            args.push_back(value);
        }
    }
    return args;
}

std::string command_line(const std::vector<std::string>& args) {
    std::string s = "primerace";
    for (const auto& a : args) s += " " + a;
    return s;
}

Manifest base_manifest(const std::vector<std::string>& args) {
    Manifest m;
    m.set("command", command_line(args));
    m.set("version", version());
    return m;
}

void set_threads(int threads) {
    if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return invalid;
    }

    CLI::App app{"Residue patterns of consecutive primes: exact counts and predicted counts."};
    app.require_subcommand(1);
    app.footer(
        "Defaults: Euler products to P = 2e7 (tail bound 5/(P log P)); S0 brute-force cutoff "
        "ceil(50 H (k+1)); integral predictions integrate from y_min = exp(2q/phi(q)) with relative "
        "tolerance 1e-7; count windows use primes > q. Exit codes: 0 ok, 2 invalid arguments, "
        "3 internal consistency failure, 4 resource limit, 1 other. --config FILE reads key=value lines "
        "(long option names); command-line flags win.");

    int threads = 0;
    std::int64_t truncation = kDefaultTruncation;
    Output out;

    // count
    auto* count = app.add_subcommand("count", "count residue patterns of consecutive primes");
    std::int64_t cq = 3;
    int cr = 2, cskip = 1;
    std::string cx, cn, cstart = "after-q";
    std::uint64_t cseg = 1ULL << 22;
    count->add_option("--q", cq, "modulus")->required();
    count->add_option("--r", cr, "pattern length")->capture_default_str();
    count->add_option("--skip", cskip, "distance k between pattern members (1: consecutive)")->capture_default_str();
    auto* cxo = count->add_option("--x", cx, "count windows whose least prime is <= X");
    auto* cno = count->add_option("--nth-prime", cn, "count the first N windows");
    cxo->excludes(cno);
    count->add_option("--start", cstart, "after-q: primes > q only; coprime: every prime not dividing q")
        ->check(CLI::IsMember({"after-q", "coprime"}))
        ->capture_default_str();
    count->add_option("--segment-bits", cseg, "odd numbers per sieve segment")->capture_default_str();
    count->add_option("--threads", threads, "worker threads (0: OpenMP default)");
    add_output(count, out);

    // predict
    auto* predict = app.add_subcommand("predict", "predicted pattern counts");
    std::int64_t pq = 3;
    int pr = 2, pskip = 1;
    std::string px, pmethod = "asymptotic";
    predict->add_option("--q", pq, "modulus")->required();
    predict->add_option("--x", px, "x")->required();
    predict->add_option("--r", pr, "pattern length")->capture_default_str();
    predict->add_option("--method", pmethod, "asymptotic or integral (integral needs r = 2)")
        ->check(CLI::IsMember({"asymptotic", "integral"}))
        ->capture_default_str();
    predict->add_option("--skip", pskip, "k >= 2 predicts p_n = a, p_{n+k} = b")->capture_default_str();
    predict->add_option("--truncation", truncation, "Euler product truncation P")->capture_default_str();
    predict->add_option("--threads", threads, "worker threads (0: OpenMP default)");
    add_output(predict, out);

    // constants
    auto* constants = app.add_subcommand("constants", "c1 and c2 for every pattern");
    constants->require_subcommand(0, 1);
    std::int64_t kq = 3, km = 0;
    int kr = 2;
    constants->add_option("--q", kq, "modulus");
    constants->add_option("--r", kr, "pattern length")->capture_default_str();
    constants->add_option("--truncation", truncation, "Euler product truncation P")->capture_default_str();
    add_output(constants, out);
    auto add_dump = [&](CLI::App* parent) {
        auto* chars = parent->add_subcommand("dump-characters", "value table of every character mod q");
        chars->add_option("--q", kq, "modulus")->required();
        add_output(chars, out);
        auto* lv = parent->add_subcommand("dump-lvalues", "L(0,chi), L(1,chi), A_{q,chi}, C_{q,chi} for characters mod m | q");
        lv->add_option("--q", kq, "modulus")->required();
        lv->add_option("--m", km, "character modulus dividing q (default q)");
        lv->add_option("--truncation", truncation, "Euler product truncation P")->capture_default_str();
        add_output(lv, out);
        return std::pair{chars, lv};
    };
    auto [kchars, klv] = add_dump(constants);
    auto [tchars, tlv] = add_dump(&app);

    // s0
    auto* s0 = app.add_subcommand("s0", "S0^k(q,v;H) by brute force and by its main terms");
    S0Request sreq;
    std::string smethod = "both";
    s0->add_option("--q", sreq.q, "modulus")->required();
    s0->add_option("--v", sreq.v, "residue class of h")->required();
    s0->add_option("--H", sreq.H, "decay scale, >= 10")->required();
    s0->add_option("--k", sreq.k, "moment")->capture_default_str();
    s0->add_option("--method", smethod, "brute, analytic or both")
        ->check(CLI::IsMember({"brute", "analytic", "both"}))
        ->capture_default_str();
    s0->add_option("--threads", threads, "worker threads (0: OpenMP default)");
    add_output(s0, out);

    // compare
    auto* cmp = app.add_subcommand("compare", "actual counts next to the predictions");
    CompareRequest creq;
    std::string mx, mn, mmethods = "integral,asymptotic";
    cmp->add_option("--q", creq.q, "modulus")->required();
    cmp->add_option("--r", creq.r, "pattern length")->capture_default_str();
    auto* mxo = cmp->add_option("--x", mx, "x");
    auto* mno = cmp->add_option("--nth-prime", mn, "first N windows; predictions at the last window's least prime");
    mxo->excludes(mno);
    cmp->add_option("--methods", mmethods, "comma-separated subset of integral,asymptotic")->capture_default_str();
    cmp->add_option("--truncation", truncation, "Euler product truncation P")->capture_default_str();
    cmp->add_option("--threads", threads, "worker threads (0: OpenMP default)");
    add_output(cmp, out);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : invalid;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    Manifest manifest = base_manifest(args);

    try {
        set_threads(threads);
        if (*count) {
            if (cx.empty() == cn.empty()) throw InvalidArgument("give exactly one of --x and --nth-prime");
            SieveConfig c;
            c.mode = cx.empty() ? LimitMode::by_count : LimitMode::by_x;
            c.limit = parse_count(cx.empty() ? cn : cx);
            c.q = cq;
            c.r = cr;
            c.skip = cskip;
            c.threads = threads;
            c.segment_bits = cseg;
            c.start = cstart == "coprime" ? StartRule::coprime : StartRule::after_q;
            std::cerr << "counting q=" << cq << " r=" << cr << " skip=" << cskip << " ...\n";
            const auto table = count_patterns(c);
            std::cerr << "done: " << table.windows << " windows, largest prime " << table.largest_prime << ", "
                      << format_number(seconds()) << " s\n";
            manifest.set("q", std::to_string(cq));
            manifest.set("r", std::to_string(cr));
            manifest.set("skip", std::to_string(cskip));
            manifest.set("limit_mode", cx.empty() ? "nth-prime" : "x");
            manifest.set("limit", std::to_string(c.limit));
            manifest.set("start_rule", cstart);
            manifest.set("segment_bits", std::to_string(cseg));
            manifest.set("windows", std::to_string(table.windows));
            manifest.set("primes_seen", std::to_string(table.primes_seen));
            manifest.set("largest_prime", std::to_string(table.largest_prime));
            manifest.set("last_start", std::to_string(table.last_start));
            emit(count_table(table), out, manifest, seconds());
        } else if (*predict) {
            const Modulus q(pq);
            const double x = parse_real(px);
            std::vector<PredictionRow> rows;
            if (pskip >= 2) {
                if (pr != 2) throw InvalidArgument("--skip needs r = 2");
                for (const auto& p : all_patterns(q, 2)) rows.push_back(skip_prediction(q, p[0], p[1], pskip, x));
            } else if (pmethod == "integral") {
                if (pr != 2) throw InvalidArgument("integral predictions need r = 2");
                IntegralOptions io;
                io.threads = threads;
                io.truncation = truncation;
                for (const auto& p : all_patterns(q, 2)) rows.push_back(integral_prediction(q, p[0], p[1], x, io));
                manifest.set("quadrature_rel_tol", io.rel_tol);
                manifest.set("y_min", integral_y_min(q));
                manifest.set("y_min_rule", "exp(2q/phi(q))");
            } else {
                constants_for(q, truncation);
                for (const auto& p : all_patterns(q, static_cast<std::size_t>(pr)))
                    rows.push_back(asymptotic_prediction(p, x));
            }
            for (const auto& row : rows)
                for (const auto& note : row.notes) std::cerr << "note " << row.pattern.to_string() << ": " << note << "\n";
            manifest.set("q", std::to_string(pq));
            manifest.set("x", x);
            manifest.set("truncation", std::to_string(truncation));
            emit(prediction_table(rows), out, manifest, seconds());
        } else if (*kchars || *tchars) {
            emit(characters_table(Modulus(kq)), out, manifest, seconds());
        } else if (*klv || *tlv) {
            const std::int64_t m = km == 0 ? kq : km;
            manifest.set("truncation", std::to_string(truncation));
            manifest.set("tail_bound", euler_tail_bound(truncation));
            emit(lvalues_table(kq, m, truncation), out, manifest, seconds());
        } else if (*constants) {
            manifest.set("q", std::to_string(kq));
            manifest.set("truncation", std::to_string(truncation));
            manifest.set("c2_agreement_tolerance", kC2Agreement);
            emit(constants_table(Modulus(kq), kr, truncation), out, manifest, seconds());
        } else if (*s0) {
            sreq.brute = smethod != "analytic";
            sreq.analytic = smethod != "brute";
            sreq.threads = threads;
            manifest.set("cutoff_factor", kS0CutoffFactor);
            manifest.set("truncation", std::to_string(kDefaultTruncation));
            emit(s0_table(sreq), out, manifest, seconds());
        } else if (*cmp) {
            if (mx.empty() == mn.empty()) throw InvalidArgument("give exactly one of --x and --nth-prime");
            creq.mode = mx.empty() ? LimitMode::by_count : LimitMode::by_x;
            creq.limit = parse_count(mx.empty() ? mn : mx);
            creq.integral = mmethods.find("integral") != std::string::npos;
            creq.asymptotic = mmethods.find("asymptotic") != std::string::npos;
            creq.threads = threads;
            creq.truncation = truncation;
            const auto res = compare(creq);
            manifest.set("q", std::to_string(creq.q));
            manifest.set("x", res.x);
            manifest.set("truncation", std::to_string(truncation));
            manifest.set("quadrature_rel_tol", IntegralOptions{}.rel_tol);
            manifest.set("y_min_rule", "exp(2q/phi(q))");
            emit(res.table, out, manifest, seconds());
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return invalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return invalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return invalid;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return consistency;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return other;
    }
    return ok;
}
