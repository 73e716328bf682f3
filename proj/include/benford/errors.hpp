#pragma once

#include <stdexcept>
#include <string>

namespace benford {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds what an exact representation can hold.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed experiment or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace benford
