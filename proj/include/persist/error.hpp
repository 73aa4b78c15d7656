#pragma once

#include <stdexcept>
#include <string>

namespace persist {

// Inadmissible (alpha, rho) or an argument outside an operation's domain.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A closed-form law or representation the library does not provide for this
// parameter regime.
class UnsupportedCase : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numerical procedure failed to reach its requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace persist
