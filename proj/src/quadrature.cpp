#include "rst/quadrature.hpp"

#include "rst/format.hpp"

namespace rst {

QuadratureError::QuadratureError(const std::string& what, double achieved_, double requested_)
    : std::runtime_error(what + ": quadrature did not converge (error estimate " + format_double(achieved_) +
                         ", requested " + format_double(requested_) + ")"),
      achieved(achieved_),
      requested(requested_) {}

}  // namespace rst
