#include "fsp/errors.hpp"

namespace fsp {

void throw_shape(const std::string& what) { throw ShapeError(what); }

}  // namespace fsp
