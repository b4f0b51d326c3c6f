#pragma once

#include <stdexcept>
#include <string>

namespace eucl {

// A computation hit a configured cap (enumeration nodes, precision, search
// radius) before it could decide. Never a mathematical verdict.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal identity that must hold for valid input failed.
class InconsistencyError : public std::logic_error {
public:
    explicit InconsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Numerical evidence was not sharp enough to decide at the capped precision.
class IndeterminateError : public std::runtime_error {
public:
    explicit IndeterminateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eucl
