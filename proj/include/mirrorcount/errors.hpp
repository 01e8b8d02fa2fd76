#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mirrorcount {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user-supplied parameters (non-prime p, d not dividing D, ...).
class validation_error : public error {
public:
    explicit validation_error(const std::string& what) : error(what) {}
};

/// Enumeration would exceed the configured cell budget.
class budget_error : public error {
public:
    budget_error(uint64_t required, uint64_t limit)
        : error("cell budget exceeded: need " + std::to_string(required) +
                " cells, limit " + std::to_string(limit)),
          required_(required), limit_(limit) {}
    uint64_t required() const { return required_; }
    uint64_t limit() const { return limit_; }

private:
    uint64_t required_;
    uint64_t limit_;
};

/// Requested ambient degree exceeds the degree budget.
class degree_budget_error : public error {
public:
    degree_budget_error(int required, int limit)
        : error("ambient degree " + std::to_string(required) +
                " exceeds degree budget " + std::to_string(limit)) {}
};

/// The ambient field cannot host the requested computation; the caller
/// must rebuild the tower with a larger degree set.
class tower_too_small_error : public error {
public:
    explicit tower_too_small_error(const std::string& what) : error(what) {}
};

/// An identity guaranteed by exact arithmetic failed: signals a bug,
/// never a property of the input.
class internal_consistency_error : public error {
public:
    explicit internal_consistency_error(const std::string& what) : error(what) {}
};

}  // namespace mirrorcount
