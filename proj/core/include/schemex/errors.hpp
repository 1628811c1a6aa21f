#pragma once

#include <stdexcept>
#include <string>

namespace schemex {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally malformed input document (non-map/non-null schema value, bad JSON, ...).
struct FormatError : Error {
  using Error::Error;
};

/// Semantically invalid schema (duplicate sibling names, empty names).
struct SchemaError : Error {
  using Error::Error;
};

/// A type path that does not exist in the schema.
struct PathError : Error {
  using Error::Error;
};

/// Query cannot be built within the configured token limits.
struct InputTooLongError : Error {
  using Error::Error;
};

/// Token id outside the trainable encoder's vocabulary.
struct VocabularyError : Error {
  using Error::Error;
};

/// Gold span cannot be mapped onto the query layout.
struct TargetError : Error {
  using Error::Error;
};

/// Dataset or configuration content problems (bad records, mismatched files).
struct DataError : Error {
  using Error::Error;
};

/// Non-finite values encountered during training.
struct NumericError : Error {
  using Error::Error;
};

/// Unreadable or incompatible checkpoint file.
struct CheckpointError : Error {
  using Error::Error;
};

}  // namespace schemex
