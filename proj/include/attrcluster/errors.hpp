#pragma once

#include <stdexcept>
#include <string>

namespace attrcluster {

/// Base class for all pipeline errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad flag values, unknown columns in overrides). Exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

/// Input data cannot be loaded, parsed or cleaned. Exit code 3.
struct DataError : Error {
    using Error::Error;
};

/// Numerical failure (zero variance, non-PSD input, solver non-convergence). Exit code 4.
struct NumericError : Error {
    using Error::Error;
};

}  // namespace attrcluster
