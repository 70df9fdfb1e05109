#pragma once

#include <stdexcept>
#include <string>

namespace qsuper {

/// Invalid lattice or run configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Basis dimension exceeds the configured cap. Maps to CLI exit code 3.
class InstanceTooLarge : public std::runtime_error {
public:
    explicit InstanceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Operator argument violates a structural precondition (not diagonal,
/// not weight-homogeneous, wrong statistics, ...).
class OperatorError : public std::invalid_argument {
public:
    explicit OperatorError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace qsuper
