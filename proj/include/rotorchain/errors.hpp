#pragma once

#include <stdexcept>
#include <string>

namespace rotorchain {

/// Input outside the mathematical domain of an operation (N < 2, T <= 0, i == j, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation refused because it would exceed the resource guard (e.g. N > 6 in the full-space oracle).
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection bracket without a sign change.
class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or incomplete run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace rotorchain
