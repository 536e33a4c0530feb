#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

// Caller passed arguments outside a function's contract (bad subset, bad
// index, violated precondition). CLI maps this to exit code 3.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// The requested exhaustive computation exceeds the configured state budget.
// Never downgraded to sampling. CLI maps this to exit code 2.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed (e.g. no unenvied player in an acyclic envy
// graph). Indicates a bug, not bad input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fairdiv
