#pragma once

#include <stdexcept>
#include <string>

namespace igb {

// Invalid or inconsistent configuration (bad spec fields, mismatched runs,
// unsupported activation/pooling combinations). CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (non-finite integrand, quadrature breakdown).
// CLI exit code 3.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace igb
