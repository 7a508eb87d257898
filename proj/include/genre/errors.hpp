// genre/errors.hpp -- exception types shared across the library
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace genre {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (tagged file, manifest, tag map, TSV).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Input document has no sentences at all.
class EmptyDocumentError : public Error {
public:
    using Error::Error;
};

/// Document has sentences but no word tokens; the per-word averages are undefined.
class DegenerateDocumentError : public Error {
public:
    using Error::Error;
};

/// Category code unknown to the taxonomy, or a merge map missing a label.
class TaxonomyError : public Error {
public:
    using Error::Error;
};

/// Dataset violates a fit precondition (too few rows, class with < 2 members, ...).
class DatasetError : public Error {
public:
    using Error::Error;
};

/// Requested dimensions are inconsistent (k > m, bad row length, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Cholesky factorization hit a non-positive pivot.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(const std::string& msg, std::size_t pivot)
        : Error(msg), pivot_(pivot) {}
    std::size_t pivot() const { return pivot_; }

private:
    std::size_t pivot_;
};

/// Within-class scatter is singular beyond the regularization budget, or a
/// feature column has zero within-class variance.  Carries the offending
/// column names.
class SingularScatterError : public Error {
public:
    SingularScatterError(const std::string& msg, std::vector<std::string> columns)
        : Error(msg), columns_(std::move(columns)) {}
    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::vector<std::string> columns_;
};

/// Model file is corrupt or has an incompatible version.
class ModelFormatError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise unusable numeric input.
class InputError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace genre
