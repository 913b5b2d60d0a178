#pragma once

#include <stdexcept>
#include <string>

namespace spcm {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input matrix asymmetry exceeds tolerance.
struct NotSymmetricError : Error {
    using Error::Error;
};

/// Smallest eigenvalue fails the strict positivity test.
struct NotPositiveDefiniteError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

/// Ill-conditioned or otherwise numerically unusable input.
struct NumericalError : Error {
    using Error::Error;
};

/// Data that cannot support the requested operation (rank-deficient scatter, empty set).
struct DegenerateDataError : Error {
    using Error::Error;
};

/// All-equal eigenvalue spectrum where a spread is required.
struct DegenerateSpectrumError : Error {
    using Error::Error;
};

/// Similarity matrix violating its contract (negative entries, zero row sums).
struct InvalidSimilarityError : Error {
    using Error::Error;
};

/// Label sequences of unequal length.
struct LengthMismatchError : Error {
    using Error::Error;
};

/// Malformed input document.
struct ParseError : Error {
    using Error::Error;
};

/// Well-formed document with missing or ill-typed fields.
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace spcm
