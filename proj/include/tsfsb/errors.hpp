#ifndef TSFSB_ERRORS_HPP
#define TSFSB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsfsb {

// Validation/domain failures map to CLI exit status 1, I/O failures to 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct StateError : Error {
  using Error::Error;
};

struct AlignmentError : Error {
  using Error::Error;
};

struct PipelineOrderError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

struct EmptyCorpusError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tsfsb

#endif  // TSFSB_ERRORS_HPP
