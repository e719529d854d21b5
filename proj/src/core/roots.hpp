#pragma once

#include <functional>
#include <string_view>

namespace fracheat::roots {

/// Root of a function that is negative to the left of the root and
/// non-negative to the right, searched over (0, inf). The bracket grows
/// geometrically by a factor of 2 from x = 1 inside [1e-300, 1e300]; the
/// root is then bisected in log space until the bracket's relative width is
/// at the level of machine precision. Throws BracketError when no sign change
/// is found.
double increasing_root(const std::function<double(double)>& g, std::string_view what);

}  // namespace fracheat::roots
