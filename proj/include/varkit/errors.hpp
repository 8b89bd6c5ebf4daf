#pragma once

#include <stdexcept>
#include <string>

namespace varkit {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error("dimension-mismatch: " + what) {}
};

struct PointNotInSet : Error {
  explicit PointNotInSet(const std::string& what) : Error("point-not-in-set: " + what) {}
};

struct NotACone : Error {
  explicit NotACone(const std::string& what) : Error("not-a-cone: " + what) {}
};

struct InconsistentRepresentations : Error {
  explicit InconsistentRepresentations(const std::string& what)
      : Error("inconsistent-representations: " + what) {}
};

struct NonPolyhedralNorm : Error {
  explicit NonPolyhedralNorm(const std::string& what) : Error("non-polyhedral-norm: " + what) {}
};

struct InvalidPrefan : Error {
  explicit InvalidPrefan(const std::string& what) : Error("invalid-prefan: " + what) {}
};

struct ResidualNotInD : Error {
  explicit ResidualNotInD(const std::string& what) : Error("residual-not-in-D: " + what) {}
};

struct WrongDShape : Error {
  explicit WrongDShape(const std::string& what) : Error("wrong-D-shape: " + what) {}
};

struct CqFails : Error {
  explicit CqFails(const std::string& what) : Error("cq-fails: " + what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse-error: " + what) {}
};

}  // namespace varkit
