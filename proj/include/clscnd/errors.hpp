#ifndef CLSCND_ERRORS_HPP
#define CLSCND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clscnd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument outside its admissible range (negative tolerance, rate, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Tensor or vector shapes that disagree with the instance dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Instance or document content violating an invariant. `key()` is the
/// offending key path, e.g. "parameters.hd".
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// No indicator configuration admits a feasible flow.
class ModelInfeasible : public Error {
 public:
  using Error::Error;
};

/// A solver limit hit before any feasible point was found.
class SolverLimit : public Error {
 public:
  using Error::Error;
};

class ComparisonError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A hypervolume reference point that does not bound the front.
class InvalidReference : public Error {
 public:
  using Error::Error;
};

}  // namespace clscnd

#endif  // CLSCND_ERRORS_HPP
