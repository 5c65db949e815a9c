#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Raised when a round-trip operator is not a contraction, which for
/// separated bodies only happens if the geometry interpenetrates or the
/// inputs are unphysical.
class GeometryError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative or adaptive procedure cannot meet its target and
/// no partial answer is meaningful.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace casimir
