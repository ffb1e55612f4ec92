#pragma once

#include <stdexcept>
#include <string>

namespace unselfie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand rasters disagree in size, or a raster is empty where content is required.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A file or value violates its declared format (bad PNG, part index > 24, ...).
class FormatError : public Error {
public:
    using Error::Error;
};

class ShoulderNotFoundError : public Error {
public:
    using Error::Error;
};

class DegenerateTransformError : public Error {
public:
    using Error::Error;
};

class EmptyDatabaseError : public Error {
public:
    using Error::Error;
};

/// Pipeline configuration failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Precondition on operands that is not a size mismatch (e.g. k > k1, all-hole image).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace unselfie
