#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dihedral/ainfinity.hpp"

namespace dihedral {

struct ParsedAlgebra {
  AInfAlgebraDesc algebra;
  std::optional<HuStructureDesc> hu;
};

// Sectioned text format:
//
//   name dual
//   ring Q
//   rho +1
//   truncation 0
//   generators
//     e 0
//   differential
//     h -> x
//   pi 0
//     e x -> x
//   involution
//     c -> -c
//   tau 1 [0]
//     e -> h
//
// '#' starts a comment. Right-hand sides are combinations like 2*x - 1/2*y or 0.
ParsedAlgebra parse_algebra(std::istream& in);
ParsedAlgebra parse_algebra_file(const std::string& path);
ParsedAlgebra parse_algebra_string(const std::string& text);

std::string serialize_algebra(const AInfAlgebraDesc& a, const HuStructureDesc* hu = nullptr);

}  // namespace dihedral
