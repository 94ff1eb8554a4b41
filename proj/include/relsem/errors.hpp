#ifndef RELSEM_ERRORS_HPP
#define RELSEM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relsem {

// Root of the library's error hierarchy. Every throwing operation throws a
// subclass of Error; nothing here is recoverable in-place, callers either
// report or translate to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tuple or label set was used outside the index set it belongs to.
class RestrictionError : public Error {
 public:
  using Error::Error;
};

// Relation construction over an empty element domain.
class EmptyDomainError : public Error {
 public:
  using Error::Error;
};

// Binary relation operation over distinct element domains.
class DomainMismatchError : public Error {
 public:
  using Error::Error;
};

// Set-level operation on relations of different type (index set or domain).
class TypeMismatchError : public Error {
 public:
  using Error::Error;
};

// Left operand of a composition does not target the right operand's index set.
class CompositionError : public Error {
 public:
  using Error::Error;
};

// A value construction broke a representation invariant (mixed label kinds,
// non-total tuple, out-of-domain cell, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Text input rejected; carries the byte offset of the first offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Wrong number of arguments for a declared predicate or function symbol.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Applied symbol is not declared in the ambient signature.
class UnknownSymbolError : public Error {
 public:
  using Error::Error;
};

// A declared symbol has no entry in a structure file.
class MissingSymbolError : public Error {
 public:
  using Error::Error;
};

// A function table does not cover its full argument space.
class PartialFunctionError : public Error {
 public:
  using Error::Error;
};

// An element outside the declared universe appeared in a structure file.
class OutOfDomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed the configured budget.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// A term variable has no binding in the current assignment.
class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

// An audit instance does not have the shape its claim requires.
class ClaimShapeError : public Error {
 public:
  using Error::Error;
};

// A replayed witness was produced by a different tool version.
class VersionMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace relsem

#endif  // RELSEM_ERRORS_HPP
