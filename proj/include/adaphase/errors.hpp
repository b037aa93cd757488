#pragma once

#include <stdexcept>
#include <string>

namespace adaphase {

/// Requested Fourier coefficient is (numerically) zero, so the derived
/// quantity is undefined.
struct ZeroCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Bayes update was asked to condition on an outcome of probability zero.
struct ImpossibleOutcome : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full enumeration of the bath configuration space was refused.
struct BathTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyEnsemble : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveValue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration parse/validation failure; the message names the offending key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace adaphase
