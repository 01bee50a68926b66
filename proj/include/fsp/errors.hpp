#pragma once

#include <stdexcept>
#include <string>

namespace fsp {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multi-index outside the node range of a grid.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Grids or arrays with incompatible extents, or grids too small for an operator.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Subgrid nodes that do not coincide with nodes of the parent grid.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// Green's function requested at zero distance in 2D/3D.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Density that does not vanish on (or near) the domain boundary.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Malformed PGRID file or CLI study description.
class FormatError : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_shape(const std::string& what);

}  // namespace fsp
