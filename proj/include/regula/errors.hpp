#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace regula {

// Root of every error the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed regulation text. `position` is a 0-based character offset
// into the string handed to the parser.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(std::string message, std::size_t position)
      : Error(std::move(message)), position(position) {}
};

// An identifier sits where a temporal operator is required but names none.
struct UnknownOperator : SyntaxError {
  std::string word;
  UnknownOperator(std::string word, std::size_t position)
      : SyntaxError("unknown operator '" + word + "'", position), word(std::move(word)) {}
};

// Malformed protocol or trace file. `line` is 1-based.
struct FileParseError : Error {
  std::size_t line;
  FileParseError(std::string message, std::size_t line)
      : Error(std::move(message)), line(line) {}
};

// A structurally well-formed protocol breaks a closed-world rule
// (duplicate name, reference to an undeclared role/label/atom, ...).
struct ValidationError : Error {
  using Error::Error;
};

struct UnknownAction : Error {
  using Error::Error;
};

struct UnknownRole : Error {
  using Error::Error;
};

struct RoleMismatch : Error {
  using Error::Error;
};

struct UnknownCommitmentLabel : Error {
  using Error::Error;
};

struct UnknownConstraint : Error {
  using Error::Error;
};

// A lifecycle move was requested that the current state does not admit.
struct IllegalTransition : Error {
  using Error::Error;
};

// Asking about a commitment that is already settled.
struct TerminalCommitment : Error {
  using Error::Error;
};

// A regulation mentions an atom outside the protocol's universe.
struct UnresolvedAtom : Error {
  using Error::Error;
};

struct InvalidBound : Error {
  using Error::Error;
};

// The requested enumeration exceeds the configured oracle guard.
struct BoundTooLarge : Error {
  using Error::Error;
};

}  // namespace regula
