#pragma once

#include <stdexcept>
#include <string>

namespace curlwave {

/// Argument outside the admissible range of an operation (c, s, p, T, omega).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Step-size controller gave up, or a root bracket could not be closed.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Point lies on (or within the exclusion tube of) the singular set of g.
struct SingularPoint : std::domain_error {
    using std::domain_error::domain_error;
};

struct MissingLimit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Phase shift a(g(x)) grows faster than linearly on the sample.
struct GrowthError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct ValidationError : std::invalid_argument {
    ValidationError(const std::string& key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key(key) {}
    std::string key;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace curlwave
