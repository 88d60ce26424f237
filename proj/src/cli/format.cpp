#include "fluxlde/cli.hpp"

#include <cmath>
#include <cstdio>

namespace fluxlde::cli {

std::string format_number(double x)
{
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  if (x == 0.0)
    return "0";
  // %g switches to scientific notation exactly when the exponent is below -4.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace fluxlde::cli
