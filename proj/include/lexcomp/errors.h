#ifndef LEXCOMP_ERRORS_H_
#define LEXCOMP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lexcomp {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 (data/config error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes do not agree for an operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A gold label index is outside the label range.
class LabelError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

// An index (token position, span endpoint) is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

// A file could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A sentence requested from a contextual store is not present. The embedding
// exporter has to be re-run over the dataset.
class MissingEmbeddingError : public Error {
 public:
  using Error::Error;
};

// A node or key is absent from a lookup structure.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid run, model or builder configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The lexical split constraint cannot be satisfied.
class SplitError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexcomp

#endif  // LEXCOMP_ERRORS_H_
