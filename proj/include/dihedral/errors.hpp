#pragma once

#include <stdexcept>
#include <string>

namespace dihedral {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DIHEDRAL_ERROR(Name)                 \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(#Name ": " + what) {}        \
  }

DIHEDRAL_ERROR(NotAField);
DIHEDRAL_ERROR(NotIntegerRing);
DIHEDRAL_ERROR(ShapeMismatch);
DIHEDRAL_ERROR(RingMismatch);
DIHEDRAL_ERROR(ModuleMismatch);
DIHEDRAL_ERROR(BidegreeMismatch);
DIHEDRAL_ERROR(InvalidIndices);
DIHEDRAL_ERROR(NotADifferential);
DIHEDRAL_ERROR(StructureInvalid);
DIHEDRAL_ERROR(MissingReflection);
DIHEDRAL_ERROR(MissingHuStructure);
DIHEDRAL_ERROR(MissingTau);
DIHEDRAL_ERROR(MissingPartner);
DIHEDRAL_ERROR(WindowExceeded);
DIHEDRAL_ERROR(NonExactNode);
DIHEDRAL_ERROR(SemanticError);

#undef DIHEDRAL_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& msg)
      : Error("ParseError at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace dihedral
