#pragma once

#include <stdexcept>
#include <string>

namespace scc {

/// Base for every error thrown by the library. `kind()` maps onto the CLI exit
/// codes, so new subclasses must pick one of the existing kinds.
class Error : public std::runtime_error {
public:
  enum class Kind { InvalidArgument, Numerical, NonConvergence, Parse, Io };

  Error(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string &what)
      : Error(Kind::InvalidArgument, what) {}
};

/// g0 = g1 = 0: the telegraph process has no unique stationary law.
class DegenerateRates : public Error {
public:
  explicit DegenerateRates(const std::string &what)
      : Error(Kind::InvalidArgument, what) {}
};

class QuadratureFailure : public Error {
public:
  explicit QuadratureFailure(const std::string &what)
      : Error(Kind::Numerical, what) {}
};

/// Data carry no information about (some of) the requested parameters.
class NonIdentifiable : public Error {
public:
  explicit NonIdentifiable(const std::string &what)
      : Error(Kind::Numerical, what) {}
};

class RankDeficient : public Error {
public:
  explicit RankDeficient(const std::string &what)
      : Error(Kind::Numerical, what) {}
};

/// Two readout outcomes are indistinguishable, so the readout noise diverges.
class NoContrast : public Error {
public:
  explicit NoContrast(const std::string &what)
      : Error(Kind::InvalidArgument, what) {}
};

class UnknownName : public Error {
public:
  explicit UnknownName(const std::string &what)
      : Error(Kind::InvalidArgument, what) {}
};

class ParseError : public Error {
public:
  ParseError(std::string file, std::size_t line, std::size_t column,
             const std::string &message)
      : Error(Kind::Parse, file + ":" + std::to_string(line) + ":" +
                               std::to_string(column) + ": " + message),
        file_(std::move(file)), line_(line), column_(column) {}

  [[nodiscard]] const std::string &file() const noexcept { return file_; }
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
public:
  explicit IoError(const std::string &what) : Error(Kind::Io, what) {}
};

} // namespace scc
