#pragma once

#include <stdexcept>
#include <string>

namespace sgf {

/// Argument outside the domain of a function (negative radius, non-finite input, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Initial vorticity violates the no-slip constraint 2∫₀¹ r ω₀ dr = 0.
class ZeroMeanViolation : public std::runtime_error {
public:
    ZeroMeanViolation(const std::string& what, double mean)
        : std::runtime_error(what), mean_(mean) {}
    double mean() const noexcept { return mean_; }

private:
    double mean_;
};

/// Two independent evaluations of the same quantity disagree.
class ConsistencyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownBuiltin : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgf
