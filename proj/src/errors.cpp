#include "ppcdg/errors.hpp"

#include <sstream>

namespace ppcdg {

namespace {

std::string describe(Layout layout, int i, int j, double x, double y, const std::string& constraint, double value) {
  std::ostringstream os;
  os << "inadmissible " << layout_name(layout) << " state in cell (" << i << ", " << j << ") at (" << x << ", "
     << y << "): " << constraint << " = " << value;
  return os.str();
}

}  // namespace

InadmissibleStateError::InadmissibleStateError(Layout layout_, int i_, int j_, double x_, double y_,
                                               std::string constraint_, double value_)
    : std::runtime_error(describe(layout_, i_, j_, x_, y_, constraint_, value_)),
      layout(layout_),
      i(i_),
      j(j_),
      x(x_),
      y(y_),
      constraint(std::move(constraint_)),
      value(value_) {}

}  // namespace ppcdg
