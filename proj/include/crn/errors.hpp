#pragma once

#include <stdexcept>
#include <string>

namespace crn {

/// Statistics make the requested quantity undefined (e.g. a zero
/// mixture probability in a correlation denominator).
class DegenerateStats : public std::runtime_error {
public:
    explicit DegenerateStats(const std::string& what) : std::runtime_error(what) {}
};

/// A pmf reconstruction produced entries outside [0,1]: the supplied
/// moments are mutually inconsistent.
class InvalidPmf : public std::runtime_error {
public:
    explicit InvalidPmf(const std::string& what) : std::runtime_error(what) {}
};

/// Node count exceeds the supported dense-enumeration cap.
class SizeLimit : public std::runtime_error {
public:
    explicit SizeLimit(const std::string& what) : std::runtime_error(what) {}
};

/// Linear program has no feasible point.
class Infeasible : public std::runtime_error {
public:
    explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

/// Linear program is unbounded below. The feasible sets built here are
/// polytopes, so seeing this indicates a construction bug.
class Unbounded : public std::runtime_error {
public:
    explicit Unbounded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unknown experiment configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace crn
