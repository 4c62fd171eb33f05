#pragma once

#include <stdexcept>
#include <string>

namespace simclust {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or configuration value violates its contract.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Input data cannot support the requested computation (empty corpus,
/// too few points for a fit, inconsistent graph and ranking).
class DataError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace simclust
