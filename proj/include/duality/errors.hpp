#pragma once

#include <stdexcept>
#include <string>

namespace duality {

enum class ErrorKind {
  Parse,
  Topology,
  SizeLimit,
  UnsupportedGenerator,
  NotACycle,
  OddDimension,
  NonUnitConstantTerm,
  IncompatibleRadicands,
  OddVertexCount,
  NotQuadratic,
  IncompleteOrder,
  InadmissibleColoring,
  InvalidEdge,
  SingularCoupling,
  DivergentTail,
  ZeroCouplingDivision,
  PathNotSimple,
  DegenerateTriangle,
  Domain,
  HalfIntegerExponent,
  UndefinedSign,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace duality
