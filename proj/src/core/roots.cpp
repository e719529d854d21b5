#include "roots.hpp"

#include <cmath>
#include <string>

#include "error.hpp"

namespace fracheat::roots {

double increasing_root(const std::function<double(double)>& g, std::string_view what) {
  constexpr double kLo = 1e-300;
  constexpr double kHi = 1e300;
  double lo = 1.0, hi = 1.0;
  if (g(1.0) < 0.0) {
    while (true) {
      hi *= 2.0;
      if (hi > kHi) throw BracketError("no bracket found for " + std::string(what) + " below 1e300");
      if (!(g(hi) < 0.0)) break;
      lo = hi;
    }
  } else {
    while (true) {
      lo *= 0.5;
      if (lo < kLo) throw BracketError("no bracket found for " + std::string(what) + " above 1e-300");
      if (g(lo) < 0.0) break;
      hi = lo;
    }
  }
  // Invariant: g(lo) < 0 <= g(hi).
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 2e-16 * hi) break;
  }
  return std::sqrt(lo) * std::sqrt(hi);
}

}  // namespace fracheat::roots
