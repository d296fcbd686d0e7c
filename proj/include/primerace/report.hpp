#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "primerace/arith.hpp"
#include "primerace/predict.hpp"
#include "primerace/sieve.hpp"

namespace primerace {

std::string version();

// Empty cells are written as nothing in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

std::string format_number(double x);  // %.15g
std::string to_csv(const Table& t);
// An array of objects with the CSV's columns; doubles carry the same 15 digits.
std::string to_json(const Table& t);

// key=value lines written next to every output file.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    std::string render() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

Table count_table(const CountTable& counts);
Table prediction_table(const std::vector<PredictionRow>& rows);
Table constants_table(const Modulus& q, int r, std::int64_t truncation);
Table characters_table(const Modulus& q);
Table lvalues_table(std::int64_t q, std::int64_t m, std::int64_t truncation);

struct S0Request {
    std::int64_t q = 3;
    std::int64_t v = 0;
    double H = 1000.0;
    int k = 0;
    bool brute = true;
    bool analytic = true;
    int threads = 0;
};
Table s0_table(const S0Request& req);

struct CompareRequest {
    std::int64_t q = 3;
    int r = 2;
    LimitMode mode = LimitMode::by_x;
    std::uint64_t limit = 0;
    bool integral = true;
    bool asymptotic = true;
    int threads = 0;
    std::int64_t truncation = kDefaultTruncation;
};
struct CompareResult {
    Table table;
    double x = 0.0;  // the x predictions were evaluated at
    CountTable counts;
};
// Actual counts next to the predictions at the same x; with a prime-count limit x is the
// least prime of the last counted window.
CompareResult compare(const CompareRequest& req);

}  // namespace primerace
