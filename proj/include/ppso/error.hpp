#pragma once

#include <stdexcept>
#include <string>

namespace ppso {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid optimizer or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class InvalidBounds : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Requested Sobol dimension is not covered by the direction-number table.
class UnsupportedDimension : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Caller-supplied arguments violate a precondition.
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public InputError {
public:
    using InputError::InputError;
};

class EmptyInputError : public InputError {
public:
    using InputError::InputError;
};

class IndexError : public InputError {
public:
    using InputError::InputError;
};

/// Dataset contents or layout are unusable.
class DataError : public Error {
public:
    using Error::Error;
};

class FormatError : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

class MissingValueError : public DataError {
public:
    using DataError::DataError;
};

class StratificationError : public DataError {
public:
    using DataError::DataError;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ppso
