#pragma once

#include <stdexcept>
#include <string>

namespace hermlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or matrix shapes that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite entries or data that fails a structural validator.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Gram–Schmidt ran out of independent candidates.
class FrameConstructionError : public Error {
 public:
  using Error::Error;
};

/// The complex structure is not integrable: [g^{1,0}, g^{1,0}] leaks into g^{0,1}.
class IntegrabilityError : public Error {
 public:
  IntegrabilityError(const std::string& what, double max_component)
      : Error(what), max_component_(max_component) {}
  double max_component() const noexcept { return max_component_; }

 private:
  double max_component_;
};

/// A catalog parameter that collapses the example (e.g. zero rotation weight).
class DegenerateParameterError : public Error {
 public:
  using Error::Error;
};

/// A procedure was called on data that does not satisfy its standing hypotheses.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Structure-file parse failure; `where` is a JSON pointer or byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace hermlab
