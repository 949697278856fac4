#pragma once

#include <stdexcept>
#include <string>

namespace escreg {

/// A pivot or a vectorized system fell below the singularity tolerance.
struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

/// A Routh row vanished identically: the polynomial has imaginary-axis roots.
struct DegenerateRow : std::runtime_error {
    explicit DegenerateRow(const std::string& what) : std::runtime_error(what) {}
};

struct DuplicateFrequency : std::runtime_error {
    explicit DuplicateFrequency(const std::string& what) : std::runtime_error(what) {}
};

/// An evaluator produced NaN or infinity.
struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& what) : std::runtime_error(what) {}
};

/// State norm exceeded the divergence threshold during integration.
struct IntegrationDiverged : std::runtime_error {
    explicit IntegrationDiverged(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario or controller configuration violates a documented invariant.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace escreg
