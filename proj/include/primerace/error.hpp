#pragma once

#include <stdexcept>
#include <string>

namespace primerace {

// Bad user input: out-of-range modulus, malformed pattern, etc.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// Two routes that must agree did not. Never caused by valid input alone.
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Work that would exceed the configured memory or time budget.
class ResourceLimit : public std::runtime_error {
public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primerace
