#pragma once

#include <stdexcept>
#include <string>

namespace davlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed descriptor text.
class ParseError : public Error {
public:
  using Error::Error;
};

// A descriptor whose parameters violate the family's presentation constraints.
class ConstraintError : public Error {
public:
  using Error::Error;
};

class GroupTooLargeError : public Error {
public:
  using Error::Error;
};

// Raised when a constructed table fails the group axioms or a presentation
// relation. Never expected on validated input.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

class NotPGroupError : public Error {
public:
  using Error::Error;
};

class NoFormulaError : public Error {
public:
  using Error::Error;
};

class WrongFamilyError : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class BudgetError : public Error {
public:
  using Error::Error;
};

// Cache file cannot be opened or written.
class IoError : public Error {
public:
  using Error::Error;
};

// A scan grid with more rows than the scan accepts.
class GridTooLargeError : public Error {
public:
  using Error::Error;
};

} // namespace davlab
