#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hydrocm {

/// Genome or block length does not match what the operation requires.
class LengthError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A parameter is outside its admissible range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a mathematical function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Statistic cannot be computed (e.g. zero denominator).
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (topology, config, record or instance file).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Topology failed validation. Carries every violation found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

}  // namespace hydrocm
