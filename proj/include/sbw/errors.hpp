#pragma once

#include <stdexcept>
#include <string>

namespace sbw {

/// Rejected configuration or argument (maps to CLI exit code 1).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Simulation produced a non-finite state or gain (maps to CLI exit code 2).
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sbw
