#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobcoord {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor layer.
class DimMismatch : public Error {
 public:
  using Error::Error;
};

class TypeMismatch : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class BadPermutation : public Error {
 public:
  using Error::Error;
};

// Pregroup layer.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownBaseSymbol : public Error {
 public:
  using Error::Error;
};

class EmptyType : public Error {
 public:
  using Error::Error;
};

class MissingSpace : public Error {
 public:
  using Error::Error;
};

// Evaluation layer.
class WireTypeMismatch : public Error {
 public:
  WireTypeMismatch(std::size_t token, std::size_t wire, const std::string& expected,
                   const std::string& actual)
      : Error("token " + std::to_string(token) + " wire " + std::to_string(wire) +
              ": expected " + expected + ", got " + actual),
        token_(token),
        wire_(wire) {}

  std::size_t token() const noexcept { return token_; }
  std::size_t wire() const noexcept { return wire_; }

 private:
  std::size_t token_;
  std::size_t wire_;
};

class UnknownWord : public Error {
 public:
  using Error::Error;
};

class UngrammaticalSentence : public Error {
 public:
  using Error::Error;
};

// Lexicon files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UndeclaredSymbol : public Error {
 public:
  using Error::Error;
};

}  // namespace frobcoord
